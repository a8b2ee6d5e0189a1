//! Polynomial constructions: greedy pair seating for symmetric B-utility and
//! consecutive placement for 1-D preferences on paths and cycles.

use crate::error::{Error, Result};
use crate::eval;
use crate::model::{classify_seat_graph, Arrangement, Instance, UtilityType};
use crate::scalar::Scalar;

const FREE: usize = usize::MAX;

/// Pair scores replaced by their rank among all distinct scores and zero.
/// Comparisons on ranks are integer comparisons.
struct RankTable {
    n: usize,
    rank: Vec<u32>,
    zero: u32,
}

impl RankTable {
    fn new<T: Scalar>(inst: &Instance<T>) -> Self {
        let n = inst.agent_count();
        let mut levels: Vec<T> = vec![T::zero()];
        for p in 0..n {
            for q in p + 1..n {
                levels.push(inst.value(p, q).clone());
            }
        }
        levels.sort_by(|a, b| a.cmp_total(b));
        levels.dedup();
        let find = |v: &T| levels.binary_search_by(|l| l.cmp_total(v)).expect("level present") as u32;
        let mut rank = vec![0; n * n];
        for p in 0..n {
            for q in p + 1..n {
                let r = find(inst.value(p, q));
                rank[p * n + q] = r;
                rank[q * n + p] = r;
            }
        }
        RankTable {
            n,
            rank,
            zero: find(&T::zero()),
        }
    }

    #[inline]
    fn get(&self, p: usize, q: usize) -> u32 {
        self.rank[p * self.n + q]
    }
}

struct Seating<'a, T> {
    inst: &'a Instance<T>,
    seat_of: Vec<usize>,
    agent_at: Vec<usize>,
}

impl<T: Scalar> Seating<'_, T> {
    fn place(&mut self, p: usize, v: usize) {
        debug_assert!(self.seat_of[p] == FREE && self.agent_at[v] == FREE);
        self.seat_of[p] = v;
        self.agent_at[v] = p;
    }

    fn free_neighbour(&self, v: usize) -> Option<usize> {
        self.inst
            .seats()
            .neighbours(v)
            .iter()
            .copied()
            .find(|&w| self.agent_at[w] == FREE)
    }
}

/// Exchange-stable arrangement for symmetric preferences under B-utility.
///
/// While two adjacent seats are free, the best-scoring pair of unseated agents
/// takes the smallest such edge. After each pair, unseated agents whose
/// favourite among the unseated and the frontier (seated agents with a free
/// neighbouring seat) is on the frontier are seated next to that favourite,
/// smallest agent first. Leftover agents then take, in index order, the free
/// seat that maximises their utility, smallest seat on ties.
///
/// Runs in `O(n^3)`. Stability holds for nonnegative valuations.
pub fn algorithm1<T: Scalar>(inst: &Instance<T>) -> Result<Arrangement> {
    inst.ensure_valid()?;
    if inst.utility() != UtilityType::B {
        return Err(Error::WrongUtility {
            expected: 'B',
            found: inst.utility().letter(),
        });
    }
    if !eval::is_symmetric(inst) {
        return Err(Error::NotSymmetric);
    }
    let n = inst.agent_count();
    let ranks = RankTable::new(inst);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|p| (p + 1..n).map(move |q| (p, q))).collect();
    // stable sort keeps lexicographic order among ties
    pairs.sort_by(|a, b| ranks.get(b.0, b.1).cmp(&ranks.get(a.0, a.1)));
    let edges = inst.seats().edges();

    let mut st = Seating {
        inst,
        seat_of: vec![FREE; n],
        agent_at: vec![FREE; n],
    };
    let mut frontier = vec![false; n];
    let mut pair_cursor = 0;
    let mut edge_cursor = 0;

    loop {
        while edge_cursor < edges.len() {
            let (u, v) = edges[edge_cursor];
            if st.agent_at[u] == FREE && st.agent_at[v] == FREE {
                break;
            }
            edge_cursor += 1;
        }
        let Some(&(u, v)) = edges.get(edge_cursor) else {
            break;
        };
        while st.seat_of[pairs[pair_cursor].0] != FREE || st.seat_of[pairs[pair_cursor].1] != FREE {
            pair_cursor += 1;
        }
        let (p, q) = pairs[pair_cursor];
        st.place(p, u);
        st.place(q, v);
        frontier[p] = true;
        frontier[q] = true;

        loop {
            for s in 0..n {
                if frontier[s] && st.free_neighbour(st.seat_of[s]).is_none() {
                    frontier[s] = false;
                }
            }
            let mut placed = false;
            for r in (0..n).filter(|&r| st.seat_of[r] == FREE) {
                let candidates = || (0..n).filter(|&x| x != r && (st.seat_of[x] == FREE || frontier[x]));
                let Some(best) = candidates().map(|x| ranks.get(r, x)).max() else {
                    continue;
                };
                let Some(s) = candidates().find(|&x| frontier[x] && ranks.get(r, x) == best) else {
                    continue;
                };
                let w = st
                    .free_neighbour(st.seat_of[s])
                    .expect("frontier agents have a free neighbour");
                st.place(r, w);
                frontier[r] = true;
                placed = true;
                break;
            }
            if !placed {
                break;
            }
        }
    }

    for p in 0..n {
        if st.seat_of[p] != FREE {
            continue;
        }
        let mut best: Option<(u32, usize)> = None;
        for v in (0..n).filter(|&v| st.agent_at[v] == FREE) {
            let util = inst
                .seats()
                .neighbours(v)
                .iter()
                .filter(|&&w| st.agent_at[w] != FREE)
                .map(|&w| ranks.get(p, st.agent_at[w]))
                .max()
                .unwrap_or(ranks.zero);
            if best.is_none_or(|(b, _)| util > b) {
                best = Some((util, v));
            }
        }
        let (_, v) = best.expect("a free seat remains for every unseated agent");
        st.place(p, v);
    }
    Arrangement::new(st.seat_of)
}

/// Seats agents in left-to-right position order, filling each path from its
/// lower-numbered end and each cycle from its smallest vertex, components in
/// order of their smallest vertex.
///
/// Exchange-stable under S- and W-utility. Requires positions and a seat graph
/// whose components are all paths or all cycles.
pub fn oned_consecutive<T: Scalar>(inst: &Instance<T>) -> Result<Arrangement> {
    inst.ensure_valid()?;
    let positions = inst.positions().ok_or(Error::MissingPositions)?;
    let class = classify_seat_graph(inst.seats());
    if !(class.is_path_graph || class.is_cycle_graph) {
        return Err(Error::UnsupportedGraph(
            "consecutive placement needs a path graph or a cycle graph".into(),
        ));
    }
    let order = positions.left_to_right();
    let seats = class.components.iter().flat_map(|c| c.order.iter().copied());
    let mut seat_of = vec![0; order.len()];
    for (&agent, seat) in order.iter().zip(seats) {
        seat_of[agent] = seat;
    }
    Arrangement::new(seat_of)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{default_names, Positions, SeatGraph, ValuationMatrix};
    use crate::scalar::rational;
    use crate::{AgentId, Rational, VertexId};

    fn sym(n: usize, g: SeatGraph, f: impl Fn(usize, usize) -> i64) -> Instance<Rational> {
        let vals = ValuationMatrix::symmetric_from_fn(n, |p, q| rational(f(p, q), 1));
        Instance::validated(default_names(n), vals, g, UtilityType::B, None).unwrap()
    }

    #[test]
    fn top_pair_takes_the_first_edge() {
        let inst = sym(4, SeatGraph::matching(2), |p, q| if (p, q) == (1, 2) { 5 } else { 1 });
        let arr = algorithm1(&inst).unwrap();
        assert_eq!(arr.seat_of(AgentId(1)), VertexId(0));
        assert_eq!(arr.seat_of(AgentId(2)), VertexId(1));
        assert!(eval::is_exchange_stable(&inst, &arr));
    }

    #[test]
    fn isolated_seat_is_filled_last() {
        let g = SeatGraph::new(5, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let inst = sym(5, g, |p, q| ((p * 7 + q * 3) % 5) as i64);
        let arr = algorithm1(&inst).unwrap();
        assert!(eval::is_exchange_stable(&inst, &arr));
    }

    #[test]
    fn all_zero_is_stable() {
        let inst = sym(6, SeatGraph::star(5), |_, _| 0);
        let arr = algorithm1(&inst).unwrap();
        assert!(eval::is_exchange_stable(&inst, &arr));
    }

    #[test]
    fn rejects_wrong_inputs() {
        let s = sym(3, SeatGraph::path(3), |_, _| 1).with_utility(UtilityType::S);
        assert!(matches!(algorithm1(&s), Err(Error::WrongUtility { .. })));
        let vals = ValuationMatrix::from_fn(3, |p, _| rational(p as i64, 1));
        let asym = Instance::validated(default_names(3), vals, SeatGraph::path(3), UtilityType::B, None).unwrap();
        assert!(matches!(algorithm1(&asym), Err(Error::NotSymmetric)));
    }

    fn oned(xs: &[i64], g: SeatGraph, u: UtilityType) -> Instance<Rational> {
        let pos = Positions::new(xs.iter().map(|&x| rational(x, 1)).collect());
        Instance::from_positions(default_names(xs.len()), pos, g, u).unwrap()
    }

    #[test]
    fn consecutive_on_a_single_path() {
        let inst = oned(&[5, 0, 2, 1], SeatGraph::path(4), UtilityType::W);
        let arr = oned_consecutive(&inst).unwrap();
        assert_eq!(arr.occupants(), &[1, 3, 2, 0]);
        assert!(eval::is_exchange_stable(&inst, &arr));
    }

    #[test]
    fn consecutive_on_two_short_paths() {
        let inst = oned(&[10, 0, 11, 1], SeatGraph::matching(2), UtilityType::S);
        let arr = oned_consecutive(&inst).unwrap();
        assert_eq!(arr.occupants(), &[1, 3, 0, 2]);
        assert!(eval::is_exchange_stable(&inst, &arr));
    }

    #[test]
    fn consecutive_on_a_triangle() {
        let inst = oned(&[0, 4, 1], SeatGraph::cycle(3).unwrap(), UtilityType::S);
        let arr = oned_consecutive(&inst).unwrap();
        assert!(eval::is_exchange_stable(&inst, &arr));
    }

    #[test]
    fn consecutive_needs_positions_and_shape() {
        let plain = sym(3, SeatGraph::path(3), |_, _| 1);
        assert!(matches!(oned_consecutive(&plain), Err(Error::MissingPositions)));
        let star = oned(&[0, 1, 2, 3], SeatGraph::star(3), UtilityType::S);
        assert!(matches!(oned_consecutive(&star), Err(Error::UnsupportedGraph(_))));
    }
}
