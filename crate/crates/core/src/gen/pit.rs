use serde::{Deserialize, Serialize};

use super::{copies, perturb_strict, AgentRole, Family, GeneratedInstance, PerturbationSpec, ReductionSource};
use crate::error::{Error, Result};
use crate::model::{default_names, Arrangement, Instance, SeatGraph, UtilityType, ValuationMatrix};
use crate::scalar::Scalar;

/// Largest vertex count the triangle-partition oracle accepts.
pub const PIT_ORACLE_CAP: usize = 12;

/// A Partition Into Triangles instance: does the vertex set split into
/// vertex-disjoint triangles?
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "PitFile", into = "PitFile")]
pub struct PitInstance {
    graph: SeatGraph,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PitFile {
    vertices: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<PitFile> for PitInstance {
    type Error = Error;

    fn try_from(f: PitFile) -> Result<Self> {
        PitInstance::new(f.vertices, f.edges.into_iter().map(|[u, v]| (u, v)))
    }
}

impl From<PitInstance> for PitFile {
    fn from(p: PitInstance) -> Self {
        PitFile {
            vertices: p.graph.vertex_count(),
            edges: p.graph.edges().iter().map(|&(u, v)| [u, v]).collect(),
        }
    }
}

impl PitInstance {
    pub fn new(vertices: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Ok(PitInstance {
            graph: SeatGraph::new(vertices, edges)?,
        })
    }

    pub fn graph(&self) -> &SeatGraph {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.vertex_count()).map(|v| self.graph.degree(v)).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.graph.max_degree()
    }

    /// Neighbour pairs `(j, k)`, `j < k`, of `v` in lexicographic order.
    fn neighbour_pairs(&self, v: usize) -> Vec<(usize, usize)> {
        let nb = self.graph.neighbours(v);
        let mut out = Vec::new();
        for (a, &j) in nb.iter().enumerate() {
            for &k in &nb[a + 1..] {
                out.push((j, k));
            }
        }
        out
    }

    /// Neighbour pairs of `v` that close a triangle with it.
    fn triangle_options(&self, v: usize) -> Vec<(usize, usize)> {
        self.neighbour_pairs(v)
            .into_iter()
            .filter(|&(j, k)| self.graph.has_edge(j, k))
            .collect()
    }

    fn require(&self, min_degree: usize, max_degree: Option<usize>) -> Result<()> {
        let n = self.vertex_count();
        if n == 0 || !n.is_multiple_of(3) {
            return Err(Error::Precondition(format!(
                "vertex count must be a positive multiple of 3, got {n}"
            )));
        }
        if self.min_degree() < min_degree {
            return Err(Error::Precondition(format!(
                "every vertex needs degree at least {min_degree}, minimum is {}",
                self.min_degree()
            )));
        }
        if let Some(max) = max_degree {
            if self.max_degree() > max {
                return Err(Error::Precondition(format!(
                    "every vertex needs degree at most {max}, maximum is {}",
                    self.max_degree()
                )));
            }
        }
        Ok(())
    }

    /// Checks that `part` covers every vertex exactly once with triangles.
    pub fn check_partition(&self, part: &TrianglePartition) -> Result<()> {
        let mut seen = vec![false; self.vertex_count()];
        for t in part {
            for (x, &v) in t.iter().enumerate() {
                if v >= seen.len() {
                    return Err(Error::InvalidWitness(format!("vertex {v} out of range")));
                }
                if seen[v] {
                    return Err(Error::InvalidWitness(format!("vertex {v} covered twice")));
                }
                seen[v] = true;
                let w = t[(x + 1) % 3];
                if !self.graph.has_edge(v, w) {
                    return Err(Error::InvalidWitness(format!("{v} and {w} are not adjacent")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidWitness(format!("vertex {v} not covered")));
        }
        Ok(())
    }
}

/// Vertex triples, each sorted ascending; triples sorted.
pub type TrianglePartition = Vec<[usize; 3]>;

/// Exhaustive search for a triangle partition. Up to [`PIT_ORACLE_CAP`] vertices.
pub fn solve_pit_bruteforce(pit: &PitInstance) -> Result<Option<TrianglePartition>> {
    let n = pit.vertex_count();
    if n > PIT_ORACLE_CAP {
        return Err(Error::CapExceeded {
            what: "PIT vertices",
            value: n,
            cap: PIT_ORACLE_CAP,
        });
    }
    if !n.is_multiple_of(3) {
        return Ok(None);
    }
    fn go(pit: &PitInstance, covered: &mut [bool], out: &mut TrianglePartition) -> bool {
        let Some(v) = covered.iter().position(|c| !c) else {
            return true;
        };
        for (j, k) in pit.triangle_options(v) {
            if j < v || covered[j] || covered[k] {
                continue;
            }
            covered[v] = true;
            covered[j] = true;
            covered[k] = true;
            out.push([v, j, k]);
            if go(pit, covered, out) {
                return true;
            }
            out.pop();
            covered[v] = false;
            covered[j] = false;
            covered[k] = false;
        }
        false
    }
    let mut covered = vec![false; n];
    let mut out = Vec::new();
    Ok(go(pit, &mut covered, &mut out).then_some(out))
}

fn build<T: Scalar>(
    family: Family,
    pit: &PitInstance,
    roles: Vec<AgentRole>,
    score: impl Fn(&AgentRole, &AgentRole) -> T,
    seats: SeatGraph,
    utility: UtilityType,
) -> Result<GeneratedInstance<T>> {
    let n = roles.len();
    let vals = ValuationMatrix::symmetric_from_fn(n, |a, b| score(&roles[a], &roles[b]));
    let instance = Instance::validated(default_names(n), vals, seats, utility, None)?;
    Ok(GeneratedInstance {
        family,
        instance,
        source: ReductionSource::Pit(pit.clone()),
        roles,
    })
}

fn same_triangle(a: (usize, usize, usize), b: (usize, usize, usize)) -> bool {
    let sorted = |(x, y, z): (usize, usize, usize)| {
        let mut t = [x, y, z];
        t.sort_unstable();
        t
    };
    a.0 != b.0 && sorted(a) == sorted(b)
}

/// Binary symmetric B-utility instance with `n` 3-cycles and one star per
/// vertex. Vertex `i` gets agent `p_i`, one pair agent per neighbour pair and
/// `2 * pairs + 2` anchors; its star has `pairs + anchors - 1` leaves.
pub fn gen_pit_to_efa_b<T: Scalar>(pit: &PitInstance) -> Result<GeneratedInstance<T>> {
    pit.require(2, Some(4))?;
    let v = pit.vertex_count();
    let mut roles = Vec::new();
    let mut stars = Vec::new();
    for i in 0..v {
        roles.push(AgentRole::Vertex { vertex: i });
        let pairs = pit.neighbour_pairs(i);
        roles.extend(pairs.iter().map(|&(j, k)| AgentRole::Pair { vertex: i, j, k }));
        let anchors = 2 * pairs.len() + 2;
        roles.extend((1..=anchors).map(|l| AgentRole::Anchor { vertex: i, index: l }));
        stars.push(SeatGraph::star(pairs.len() + anchors - 1));
    }
    let mut parts = copies(&SeatGraph::cycle(3)?, v / 3);
    parts.extend(stars);
    let g = pit.graph().clone();
    let score = move |a: &AgentRole, b: &AgentRole| {
        use AgentRole::*;
        let linked = match (*a, *b) {
            (Vertex { vertex }, Pair { vertex: w, .. })
            | (Pair { vertex: w, .. }, Vertex { vertex })
            | (Vertex { vertex }, Anchor { vertex: w, .. })
            | (Anchor { vertex: w, .. }, Vertex { vertex }) => vertex == w,
            (Pair { vertex: i, j, k }, Pair { vertex: x, j: y, k: z }) => {
                g.has_edge(j, k) && same_triangle((i, j, k), (x, y, z))
            }
            _ => false,
        };
        if linked {
            T::one()
        } else {
            T::zero()
        }
    };
    build(
        Family::PitB,
        pit,
        roles,
        score,
        SeatGraph::disjoint_union(&parts),
        UtilityType::B,
    )
}

/// Binary symmetric W-utility instance with `n` 3-cycles and `3n` 2-cycles.
/// Vertex `i` gets `p_i` and two helpers; helper 2 of `i` is linked to helper
/// 1 of `i + 1`, cyclically.
pub fn gen_pit_to_efa_w_binary<T: Scalar>(pit: &PitInstance) -> Result<GeneratedInstance<T>> {
    pit.require(2, None)?;
    let v = pit.vertex_count();
    let mut roles = Vec::with_capacity(3 * v);
    for i in 0..v {
        roles.push(AgentRole::Vertex { vertex: i });
        roles.push(AgentRole::Link { vertex: i, index: 1 });
        roles.push(AgentRole::Link { vertex: i, index: 2 });
    }
    let mut parts = copies(&SeatGraph::cycle(3)?, v / 3);
    parts.extend(copies(&SeatGraph::path(2), v));
    let g = pit.graph().clone();
    let score = move |a: &AgentRole, b: &AgentRole| {
        use AgentRole::*;
        let linked = match (*a, *b) {
            (Vertex { vertex: i }, Vertex { vertex: j }) => g.has_edge(i, j),
            (Vertex { vertex: i }, Link { vertex: j, index: 1 })
            | (Link { vertex: j, index: 1 }, Vertex { vertex: i }) => i == j,
            (Link { vertex: i, index: x }, Link { vertex: j, index: y }) if x != y => {
                let (second, first) = if x == 2 { (i, j) } else { (j, i) };
                second == first || (second + 1) % v == first
            }
            _ => false,
        };
        if linked {
            T::one()
        } else {
            T::zero()
        }
    };
    build(
        Family::PitWBinary,
        pit,
        roles,
        score,
        SeatGraph::disjoint_union(&parts),
        UtilityType::W,
    )
}

const FAMILY_SIZE: usize = 18;

/// Members of vertex family `i` in their cyclic order: three copies per
/// triangle option, then padding.
fn strict_family(pit: &PitInstance, i: usize) -> Vec<AgentRole> {
    let mut fam: Vec<AgentRole> = pit
        .triangle_options(i)
        .into_iter()
        .flat_map(|(j, k)| (1..=3).map(move |copy| AgentRole::Triple { vertex: i, copy, j, k }))
        .collect();
    let pads = FAMILY_SIZE - fam.len();
    fam.extend((1..=pads).map(|l| AgentRole::Pad { vertex: i, index: l }));
    fam
}

/// Base valuation levels.
fn strict_base<T: Scalar>(pit: &PitInstance, roles: &[AgentRole], families: &[Vec<usize>]) -> ValuationMatrix<T> {
    let n = roles.len();
    let mut base = vec![T::zero(); n * n];
    let mut set = |a: usize, b: usize, v: T| {
        base[a * n + b] = v.clone();
        base[b * n + a] = v;
    };
    for fam in families {
        for x in 0..fam.len() {
            set(fam[x], fam[(x + 1) % fam.len()], T::from_int(2));
        }
        let reduced: Vec<usize> = fam
            .iter()
            .copied()
            .filter(|&a| !matches!(roles[a], AgentRole::Triple { copy: 1, .. }))
            .collect();
        for (x, &a) in reduced.iter().enumerate() {
            if matches!(roles[a], AgentRole::Triple { copy: 2, .. }) {
                let pred = reduced[(x + reduced.len() - 1) % reduced.len()];
                set(a, pred, T::ratio(3, 2));
            }
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            use AgentRole::*;
            let v = match (roles[a], roles[b]) {
                (Triple { vertex: i, copy: 1, j, k }, Triple { vertex: x, copy: 1, j: y, k: z })
                    if same_triangle((i, j, k), (x, y, z)) && pit.graph.has_edge(j, k) =>
                {
                    Some(3)
                }
                (SAgent { .. }, SAgent { .. }) | (TAgent { .. }, TAgent { .. }) => Some(3),
                (SAgent { .. }, TAgent { .. }) | (TAgent { .. }, SAgent { .. }) => Some(2),
                (SAgent { .. }, _) | (_, SAgent { .. }) => Some(1),
                (TAgent { .. }, _) | (_, TAgent { .. }) => Some(-1),
                _ => None,
            };
            if let Some(v) = v {
                set(a, b, T::from_int(v));
            }
        }
    }
    ValuationMatrix::from_fn(n, |p, q| base[p * n + q].clone())
}

/// Strict symmetric W-utility instance with `n + 2` 3-cycles and `3n`
/// 17-cycles. Every vertex owns a family of 18 agents; six enforcer agents
/// complete the set. Base levels are 3, 2, 3/2, 1, 0 and -1; ties are then
/// broken by [`perturb_strict`] with the automatic step.
pub fn gen_pit_to_efa_w_strict<T: Scalar>(pit: &PitInstance) -> Result<GeneratedInstance<T>> {
    pit.require(2, Some(4))?;
    let v = pit.vertex_count();
    let mut roles = Vec::with_capacity(FAMILY_SIZE * v + 6);
    let mut families = Vec::with_capacity(v);
    for i in 0..v {
        let fam = strict_family(pit, i);
        families.push((roles.len()..roles.len() + fam.len()).collect::<Vec<_>>());
        roles.extend(fam);
    }
    roles.extend((1..=3).map(|index| AgentRole::SAgent { index }));
    roles.extend((1..=3).map(|index| AgentRole::TAgent { index }));
    let base: ValuationMatrix<T> = strict_base(pit, &roles, &families);
    let mut parts = copies(&SeatGraph::cycle(3)?, v / 3 + 2);
    parts.extend(copies(&SeatGraph::cycle(FAMILY_SIZE - 1)?, v));
    let n = roles.len();
    let inst = Instance::validated(
        default_names(n),
        base,
        SeatGraph::disjoint_union(&parts),
        UtilityType::W,
        None,
    )?;
    let spec = PerturbationSpec::auto(&inst)?;
    let instance = perturb_strict(&inst, &spec)?;
    Ok(GeneratedInstance {
        family: Family::PitWStrict,
        instance,
        source: ReductionSource::Pit(pit.clone()),
        roles,
    })
}

fn pit_source<T>(gi: &GeneratedInstance<T>) -> Result<&PitInstance> {
    match &gi.source {
        ReductionSource::Pit(p) => Ok(p),
        _ => Err(Error::Precondition("instance was not generated from a PIT source".into())),
    }
}

fn sorted_triple(t: [usize; 3]) -> [usize; 3] {
    let mut t = t;
    t.sort_unstable();
    t
}

/// The envy-free arrangement the construction assigns to a triangle partition.
pub fn arrangement_from_triangle_partition<T: Scalar>(
    gi: &GeneratedInstance<T>,
    part: &TrianglePartition,
) -> Result<Arrangement> {
    let pit = pit_source(gi)?;
    pit.check_partition(part)?;
    let index = gi.role_index();
    let find = |r: AgentRole| {
        index
            .get(&r)
            .copied()
            .ok_or_else(|| Error::InvalidWitness(format!("no agent with role {r:?}")))
    };
    let v = pit.vertex_count();
    let mut agent_at = Vec::with_capacity(gi.roles.len());
    let mut chosen = vec![None; v];
    for &t in part {
        let [a, b, c] = sorted_triple(t);
        for (x, y, z) in [(a, b, c), (b, a, c), (c, a, b)] {
            chosen[x] = Some((y, z));
        }
    }
    match gi.family {
        Family::PitB => {
            for &t in part {
                let [a, b, c] = sorted_triple(t);
                for (x, j, k) in [(a, b, c), (b, a, c), (c, a, b)] {
                    agent_at.push(find(AgentRole::Pair { vertex: x, j, k })?);
                }
            }
            for i in 0..v {
                agent_at.push(find(AgentRole::Vertex { vertex: i })?);
                let skip = chosen[i];
                for (j, k) in pit.neighbour_pairs(i) {
                    if Some((j, k)) != skip {
                        agent_at.push(find(AgentRole::Pair { vertex: i, j, k })?);
                    }
                }
                let anchors = 2 * pit.neighbour_pairs(i).len() + 2;
                for l in 1..=anchors {
                    agent_at.push(find(AgentRole::Anchor { vertex: i, index: l })?);
                }
            }
        }
        Family::PitWBinary => {
            for &t in part {
                for x in sorted_triple(t) {
                    agent_at.push(find(AgentRole::Vertex { vertex: x })?);
                }
            }
            for i in 0..v {
                agent_at.push(find(AgentRole::Link { vertex: i, index: 1 })?);
                agent_at.push(find(AgentRole::Link { vertex: i, index: 2 })?);
            }
        }
        Family::PitWStrict => {
            for &t in part {
                let [a, b, c] = sorted_triple(t);
                for (x, j, k) in [(a, b, c), (b, a, c), (c, a, b)] {
                    agent_at.push(find(AgentRole::Triple { vertex: x, copy: 1, j, k })?);
                }
            }
            for index in 1..=3 {
                agent_at.push(find(AgentRole::SAgent { index })?);
            }
            for index in 1..=3 {
                agent_at.push(find(AgentRole::TAgent { index })?);
            }
            for i in 0..v {
                let (j, k) = chosen[i].expect("partition covers every vertex");
                for r in strict_family(pit, i) {
                    if r != (AgentRole::Triple { vertex: i, copy: 1, j, k }) {
                        agent_at.push(find(r)?);
                    }
                }
            }
        }
        Family::BinPacking1d => {
            return Err(Error::Precondition("bin packing instances take a packing".into()));
        }
    }
    Arrangement::from_agent_at(agent_at)
}

/// Reads a triangle partition off the 3-cycles of an arrangement. Cycles
/// holding only enforcer agents are skipped. Fails unless the result is a
/// valid partition of the source graph.
pub fn triangle_partition_from_arrangement<T: Scalar>(
    gi: &GeneratedInstance<T>,
    arr: &Arrangement,
) -> Result<TrianglePartition> {
    let pit = pit_source(gi)?;
    let triangles = match gi.family {
        Family::PitB | Family::PitWBinary => pit.vertex_count() / 3,
        Family::PitWStrict => pit.vertex_count() / 3 + 2,
        Family::BinPacking1d => {
            return Err(Error::Precondition("bin packing instances have no triangles".into()));
        }
    };
    let mut part = Vec::new();
    for t in 0..triangles {
        let roles: Vec<AgentRole> = (0..3)
            .map(|x| gi.roles[arr.occupants()[3 * t + x]])
            .collect();
        if roles.iter().all(|r| matches!(r, AgentRole::SAgent { .. }))
            || roles.iter().all(|r| matches!(r, AgentRole::TAgent { .. }))
        {
            continue;
        }
        let mut triple = [0; 3];
        for (slot, r) in triple.iter_mut().zip(&roles) {
            *slot = match (gi.family, *r) {
                (Family::PitB, AgentRole::Pair { vertex, .. })
                | (Family::PitWBinary, AgentRole::Vertex { vertex })
                | (Family::PitWStrict, AgentRole::Triple { vertex, copy: 1, .. }) => vertex,
                _ => {
                    return Err(Error::InvalidWitness(format!(
                        "3-cycle {t} holds an agent with role {r:?}"
                    )))
                }
            };
        }
        part.push(sorted_triple(triple));
    }
    part.sort_unstable();
    pit.check_partition(&part)?;
    Ok(part)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eval;
    use crate::Rational;

    fn k3() -> PitInstance {
        PitInstance::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap()
    }

    fn hexagon() -> PitInstance {
        PitInstance::new(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap()
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(solve_pit_bruteforce(&k3()).unwrap(), Some(vec![[0, 1, 2]]));
        assert_eq!(solve_pit_bruteforce(&hexagon()).unwrap(), None);
        let big = PitInstance::new(15, (0..15).map(|i| (i, (i + 1) % 15))).unwrap();
        assert!(solve_pit_bruteforce(&big).is_err());
    }

    #[test]
    fn b_family_counts_for_a_triangle() {
        let gi = gen_pit_to_efa_b::<Rational>(&k3()).unwrap();
        assert_eq!(gi.instance.agent_count(), 18);
        let class = crate::model::classify_seat_graph(gi.instance.seats());
        let sizes: Vec<_> = class.components.iter().map(|c| (c.kind, c.size)).collect();
        use crate::model::ComponentKind::*;
        assert_eq!(sizes, vec![(Cycle, 3), (Star, 5), (Star, 5), (Star, 5)]);
    }

    #[test]
    fn forward_arrangements_are_envy_free() {
        let part = solve_pit_bruteforce(&k3()).unwrap().unwrap();
        for gi in [
            gen_pit_to_efa_b::<Rational>(&k3()).unwrap(),
            gen_pit_to_efa_w_binary(&k3()).unwrap(),
            gen_pit_to_efa_w_strict(&k3()).unwrap(),
        ] {
            let arr = arrangement_from_triangle_partition(&gi, &part).unwrap();
            assert!(eval::is_envy_free(&gi.instance, &arr), "{:?}", gi.family);
            assert_eq!(triangle_partition_from_arrangement(&gi, &arr).unwrap(), part);
        }
    }

    #[test]
    fn w_binary_chain_wraps() {
        let gi = gen_pit_to_efa_w_binary::<Rational>(&hexagon()).unwrap();
        let last = gi.agent_with_role(&AgentRole::Link { vertex: 5, index: 2 }).unwrap();
        let first = gi.agent_with_role(&AgentRole::Link { vertex: 0, index: 1 }).unwrap();
        assert_eq!(gi.instance.value(last, first), &Rational::from_integer(1.into()));
        assert_eq!(gi.instance.agent_count(), 18);
    }

    #[test]
    fn strict_family_shape() {
        let gi = gen_pit_to_efa_w_strict::<Rational>(&k3()).unwrap();
        assert_eq!(gi.instance.agent_count(), 60);
        let c = crate::model::classify_preferences(&gi.instance);
        assert!(c.strict && c.symmetric);
        let t = gi.agent_with_role(&AgentRole::TAgent { index: 1 }).unwrap();
        let outsider = gi.agent_with_role(&AgentRole::Pad { vertex: 0, index: 1 }).unwrap();
        let v = gi.instance.value(t, outsider);
        assert!(*v > crate::rational(-1, 1) && *v < crate::rational(-3, 4));
    }

    #[test]
    fn degree_bounds_are_enforced() {
        let path = PitInstance::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(gen_pit_to_efa_b::<Rational>(&path).is_err());
        let k5_plus = PitInstance::new(6, (0..6).flat_map(|u| (u + 1..6).map(move |v| (u, v)))).unwrap();
        assert!(gen_pit_to_efa_b::<Rational>(&k5_plus).is_err());
        assert!(gen_pit_to_efa_w_binary::<Rational>(&k5_plus).is_ok());
    }

    #[test]
    fn json_shape() {
        let text = serde_json::to_string(&k3()).unwrap();
        assert_eq!(text, r#"{"vertices":3,"edges":[[0,1],[0,2],[1,2]]}"#);
        let back: PitInstance = serde_json::from_str(&text).unwrap();
        assert_eq!(back, k3());
    }
}
