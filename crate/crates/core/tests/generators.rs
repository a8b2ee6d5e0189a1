mod oracle;

use proptest::prelude::*;

use seatplan::gen::{self, AgentRole, BinPackingInstance, GraphFamily, PitInstance, RandomParams};
use seatplan::model::{classify_preferences, classify_seat_graph, validate_instance, ComponentKind, PreferenceClass};
use seatplan::{io, rational, Instance, Rational, UtilityType};

fn kinds(inst: &Instance) -> Vec<(ComponentKind, usize)> {
    classify_seat_graph(inst.seats())
        .components
        .iter()
        .map(|c| (c.kind, c.size))
        .collect()
}

fn pit_from_mask(mask: u32, n: usize) -> Option<PitInstance> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let edges: Vec<_> = pairs
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, &e)| e)
        .collect();
    let p = PitInstance::new(n, edges).ok()?;
    (p.min_degree() >= 2 && p.max_degree() <= 4).then_some(p)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn perturbation_is_strict_symmetric_and_order_preserving(
        n in 2usize..7,
        raw in proptest::collection::vec(-3i64..4, 21),
    ) {
        let mut k = 0;
        let mut vals = vec![vec![0i64; n]; n];
        for p in 0..n {
            for q in p + 1..n {
                vals[p][q] = raw[k];
                vals[q][p] = raw[k];
                k += 1;
            }
        }
        let m = seatplan::model::ValuationMatrix::symmetric_from_fn(n, |p, q| rational(vals[p][q], 2));
        let inst = Instance::validated(
            seatplan::model::default_names(n), m, seatplan::model::SeatGraph::path(n), UtilityType::S, None,
        ).unwrap();
        let spec = gen::PerturbationSpec::auto(&inst).unwrap();
        let out = gen::perturb_strict(&inst, &spec).unwrap();
        let c = classify_preferences(&out);
        prop_assert!(c.strict && c.symmetric);
        let (a, b) = (oracle::Plain::new(&inst), oracle::Plain::new(&out));
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    if p != q && p != r && a.f[p][q] < a.f[p][r] {
                        prop_assert!(b.f[p][q] < b.f[p][r]);
                    }
                }
            }
        }
    }

    #[test]
    fn pit_families_have_declared_shape(mask in 0u32..(1 << 15)) {
        let Some(pit) = pit_from_mask(mask, 6) else { return Ok(()); };
        let b = gen::gen_pit_to_efa_b::<Rational>(&pit).unwrap();
        prop_assert!(validate_instance(&b.instance).is_empty());
        let c = classify_preferences(&b.instance);
        prop_assert!(c.binary && c.symmetric);
        let comps = kinds(&b.instance);
        prop_assert_eq!(comps.iter().filter(|k| **k == (ComponentKind::Cycle, 3)).count(), 2);
        for &(kind, size) in &comps[2..] {
            prop_assert_eq!(kind, ComponentKind::Star);
            prop_assert!((5..=20).contains(&size), "star with {} leaves", size - 1);
        }
        prop_assert_eq!(b.roles.len(), b.instance.agent_count());

        let w = gen::gen_pit_to_efa_w_binary::<Rational>(&pit).unwrap();
        let c = classify_preferences(&w.instance);
        prop_assert!(c.binary && c.symmetric);
        for (kind, size) in kinds(&w.instance) {
            prop_assert!(matches!((kind, size), (ComponentKind::Cycle, 3) | (ComponentKind::K2, 2)));
        }

        let s = gen::gen_pit_to_efa_w_strict::<Rational>(&pit).unwrap();
        prop_assert_eq!(s.instance.agent_count(), 18 * 6 + 6);
        let c = classify_preferences(&s.instance);
        prop_assert!(c.strict && c.symmetric);
        let comps = kinds(&s.instance);
        prop_assert_eq!(comps.iter().filter(|k| **k == (ComponentKind::Cycle, 3)).count(), 4);
        prop_assert_eq!(comps.iter().filter(|k| **k == (ComponentKind::Cycle, 17)).count(), 6);
    }

    #[test]
    fn yes_instances_give_envy_free_forward_arrangements(mask in 0u32..(1 << 15)) {
        let Some(pit) = pit_from_mask(mask, 6) else { return Ok(()); };
        let Some(part) = gen::solve_pit_bruteforce(&pit).unwrap() else { return Ok(()); };
        for gi in [
            gen::gen_pit_to_efa_b::<Rational>(&pit).unwrap(),
            gen::gen_pit_to_efa_w_binary(&pit).unwrap(),
            gen::gen_pit_to_efa_w_strict(&pit).unwrap(),
        ] {
            let arr = gen::arrangement_from_triangle_partition(&gi, &part).unwrap();
            prop_assert!(oracle::Plain::new(&gi.instance).envy_free(arr.seats()));
        }
    }

    #[test]
    fn random_instances_round_trip_through_json(seed in 0u64..1000, n in 2usize..9) {
        let params = RandomParams {
            prefs: PreferenceClass { symmetric: seed % 2 == 0, ..Default::default() },
            value_range: (-4, 4),
            ..RandomParams::new(n, GraphFamily::Arbitrary, UtilityType::W, seed)
        };
        let inst: Instance = gen::gen_random(&params).unwrap();
        let text = io::write_instance(&inst);
        let back = io::read_instance(&text).unwrap();
        prop_assert_eq!(&back, &inst);
        prop_assert_eq!(io::write_instance(&back), text);
    }
}

#[test]
fn star_leaf_counts_span_four_to_nineteen() {
    // degree 2 gives 1 pair and 4 anchors; degree 4 gives 6 pairs and 14 anchors
    let k3 = PitInstance::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
    let gi = gen::gen_pit_to_efa_b::<Rational>(&k3).unwrap();
    assert_eq!(gi.instance.agent_count(), 18);
    assert!(kinds(&gi.instance)[1..].iter().all(|&k| k == (ComponentKind::Star, 5)));

    let k5: Vec<(usize, usize)> = (0..5).flat_map(|u| (u + 1..5).map(move |v| (u, v))).collect();
    let mut edges = k5.clone();
    edges.push((5, 0));
    edges.push((5, 1));
    let pit = PitInstance::new(6, edges).unwrap();
    assert!(gen::gen_pit_to_efa_b::<Rational>(&pit).is_err(), "vertex 0 has degree 5");
    let octahedron = PitInstance::new(
        6,
        [(0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 4), (1, 5), (2, 4), (2, 5), (3, 4), (3, 5)],
    )
    .unwrap();
    let gi = gen::gen_pit_to_efa_b::<Rational>(&octahedron).unwrap();
    assert!(kinds(&gi.instance)[2..].iter().all(|&k| k == (ComponentKind::Star, 20)));
}

#[test]
fn item_agents_prefer_their_neighbours_within_the_item() {
    let bp = BinPackingInstance::new(vec![4, 3, 1], 4, 2).unwrap();
    let gi = gen::gen_binpacking_to_1d_b::<Rational>(&bp, None).unwrap();
    assert!(classify_preferences(&gi.instance).one_dimensional);
    let plain = oracle::Plain::new(&gi.instance);
    for (a, role) in gi.roles.iter().enumerate() {
        let AgentRole::Item { item, index } = *role else { unreachable!() };
        let want = if index == 1 {
            AgentRole::Item { item, index: 2 }
        } else {
            AgentRole::Item { item, index: index - 1 }
        };
        let fav = gi.agent_with_role(&want).unwrap();
        for b in 0..plain.n {
            if b != a && b != fav {
                assert!(plain.f[a][fav] > plain.f[a][b], "agent {a} ({role:?})");
            }
        }
    }
    let norm = bp.preprocess().unwrap();
    assert_eq!(kinds(&gi.instance), vec![(ComponentKind::Path, norm.capacity()); 2]);
}

#[test]
fn packing_round_trip_on_every_small_yes_instance() {
    for sizes in [vec![1, 1], vec![2, 1, 1], vec![3, 1], vec![2, 2], vec![1, 1, 1, 1]] {
        let bp = BinPackingInstance::new(sizes.clone(), 2, 2).unwrap();
        let Some(pack) = gen::solve_binpacking_bruteforce(&bp).unwrap() else {
            assert!(!oracle::packable(&sizes, 2, 2));
            continue;
        };
        let gi = gen::gen_binpacking_to_1d_b::<Rational>(&bp, None).unwrap();
        let arr = gen::arrangement_from_packing(&gi, &pack).unwrap();
        assert!(oracle::Plain::new(&gi.instance).envy_free(arr.seats()), "{sizes:?}");
        let back = gen::packing_from_arrangement(&gi, &arr).unwrap();
        assert_eq!(&back[..sizes.len()], &pack[..]);
    }
}
