use crate::error::{Error, Result};
use crate::eval;
use crate::model::Instance;
use crate::scalar::Scalar;

/// Tie-breaking offsets: the `i`-th unordered pair in lexicographic order
/// (1-based) gets `i * delta` added to both directions.
#[derive(Clone, Debug, PartialEq)]
pub struct PerturbationSpec<T> {
    pub delta: T,
}

fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Smallest gap between distinct pair values; one when all values coincide.
fn min_gap<T: Scalar>(inst: &Instance<T>) -> T {
    let n = inst.agent_count();
    let mut vals: Vec<T> = (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .map(|(p, q)| inst.value(p, q).clone())
        .collect();
    vals.sort_by(|a, b| a.cmp_total(b));
    vals.dedup();
    vals.windows(2)
        .map(|w| w[1].clone() - w[0].clone())
        .reduce(T::min_of)
        .unwrap_or_else(T::one)
}

impl<T: Scalar> PerturbationSpec<T> {
    /// `delta = gap / (4M)` with `M` the number of pairs.
    pub fn auto(inst: &Instance<T>) -> Result<Self> {
        let m = pair_count(inst.agent_count()).max(1);
        Ok(PerturbationSpec {
            delta: min_gap(inst) / T::from_int(4 * m as i64),
        })
    }

    /// Offset for the pair `{p, q}`, `p != q`.
    pub fn epsilon(&self, n: usize, p: usize, q: usize) -> T {
        let (a, b) = if p < q { (p, q) } else { (q, p) };
        // pairs before row a, then position within row a
        let index = a * n - a * (a + 1) / 2 + (b - a);
        self.delta.clone() * T::from_int(index as i64)
    }
}

/// Adds distinct offsets to every pair so that all pair values differ while
/// the order between distinct base values is kept. Requires symmetric
/// preferences and `0 < delta * M < gap / 2`. Positions are dropped.
pub fn perturb_strict<T: Scalar>(inst: &Instance<T>, spec: &PerturbationSpec<T>) -> Result<Instance<T>> {
    inst.ensure_valid()?;
    if !eval::is_symmetric(inst) {
        return Err(Error::NotSymmetric);
    }
    let n = inst.agent_count();
    let m = T::from_int(pair_count(n) as i64);
    if spec.delta <= T::zero() {
        return Err(Error::Precondition("perturbation step must be positive".into()));
    }
    if spec.delta.clone() * m * T::from_int(2) >= min_gap(inst) {
        return Err(Error::Precondition(
            "perturbation step too large: delta * pairs must stay below half the value gap".into(),
        ));
    }
    let vals = inst
        .valuations()
        .map(|p, q, v| v.clone() + spec.epsilon(n, p, q));
    Ok(inst.clone().with_valuations(vals))
}
