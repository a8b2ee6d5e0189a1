use crate::error::{Error, Result};
use crate::model::AgentId;
use crate::scalar::Scalar;

/// Dense `n x n` valuation matrix. Entry `(p, q)` is how much `p` values
/// sitting next to `q`. The diagonal does not exist.
#[derive(Clone, Debug, PartialEq)]
pub struct ValuationMatrix<T> {
    n: usize,
    data: Vec<Option<T>>,
}

impl<T: Scalar> ValuationMatrix<T> {
    /// Row-major entries; diagonal entries must be `None`. Off-diagonal `None`
    /// entries are allowed here and reported by instance validation.
    pub fn new(n: usize, data: Vec<Option<T>>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Format(format!(
                "valuation matrix for {n} agents needs {} entries, got {}",
                n * n,
                data.len()
            )));
        }
        if let Some(p) = (0..n).find(|&p| data[p * n + p].is_some()) {
            return Err(Error::SelfValuation(p));
        }
        Ok(ValuationMatrix { n, data })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let data = (0..n * n)
            .map(|i| {
                let (p, q) = (i / n, i % n);
                (p != q).then(|| f(p, q))
            })
            .collect();
        ValuationMatrix { n, data }
    }

    /// Symmetric matrix; `f(p, q)` is called once per unordered pair with `p < q`.
    pub fn symmetric_from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = vec![None; n * n];
        for p in 0..n {
            for q in p + 1..n {
                let v = f(p, q);
                data[q * n + p] = Some(v.clone());
                data[p * n + q] = Some(v);
            }
        }
        ValuationMatrix { n, data }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Checked access. Self-valuations and missing entries are errors.
    pub fn value(&self, p: AgentId, q: AgentId) -> Result<&T> {
        let (p, q) = (p.index(), q.index());
        for i in [p, q] {
            if i >= self.n {
                return Err(Error::OutOfRange {
                    what: "agents",
                    index: i,
                    len: self.n,
                });
            }
        }
        if p == q {
            return Err(Error::SelfValuation(p));
        }
        self.data[p * self.n + q]
            .as_ref()
            .ok_or_else(|| Error::Format(format!("missing valuation of agent {p} for agent {q}")))
    }

    /// Unchecked access for validated instances.
    #[inline]
    pub(crate) fn get(&self, p: usize, q: usize) -> &T {
        debug_assert_ne!(p, q, "self-valuation");
        self.data[p * self.n + q]
            .as_ref()
            .expect("valuation present in a validated instance")
    }

    pub(crate) fn raw(&self, p: usize, q: usize) -> Option<&T> {
        self.data[p * self.n + q].as_ref()
    }

    /// Ordered pairs `(p, q)`, `p != q`, without a valuation.
    pub fn missing_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n * self.n)
            .map(move |i| (i / self.n, i % self.n))
            .filter(move |&(p, q)| p != q && self.data[p * self.n + q].is_none())
    }

    /// Applies `f` to every present entry.
    pub fn map<U: Scalar>(&self, mut f: impl FnMut(usize, usize, &T) -> U) -> ValuationMatrix<U> {
        let n = self.n;
        let data = self
            .data
            .iter()
            .enumerate()
            .map(|(i, v)| v.as_ref().map(|v| f(i / n, i % n, v)))
            .collect();
        ValuationMatrix { n, data }
    }
}

/// Agent coordinates on the real line.
#[derive(Clone, Debug, PartialEq)]
pub struct Positions<T> {
    coords: Vec<T>,
}

impl<T: Scalar> Positions<T> {
    pub fn new(coords: Vec<T>) -> Self {
        Positions { coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn coord(&self, a: usize) -> &T {
        &self.coords[a]
    }

    /// Distance between the leftmost and rightmost agent; zero when empty.
    pub fn span(&self) -> T {
        let mut it = self.coords.iter();
        let Some(first) = it.next() else {
            return T::zero();
        };
        let (lo, hi) = it.fold((first, first), |(lo, hi), x| {
            (if x < lo { x } else { lo }, if x > hi { x } else { hi })
        });
        hi.clone() - lo.clone()
    }

    pub fn distance(&self, p: usize, q: usize) -> T {
        (self.coords[p].clone() - self.coords[q].clone()).abs()
    }

    /// True when no two agents share a point.
    pub fn is_unique(&self) -> bool {
        let mut sorted: Vec<&T> = self.coords.iter().collect();
        sorted.sort_by(|a, b| a.cmp_total(b));
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Agents sorted left to right, ties by index.
    pub fn left_to_right(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.coords.len()).collect();
        order.sort_by(|&a, &b| self.coords[a].cmp_total(&self.coords[b]).then(a.cmp(&b)));
        order
    }

    /// The 1-D valuation `span - distance + 1` for a pair.
    pub fn valuation(&self, p: usize, q: usize) -> T {
        self.span() - self.distance(p, q) + T::one()
    }
}

/// Derives the 1-D valuation matrix `f_p(q) = D - |l_p - l_q| + 1`.
pub fn valuations_from_positions<T: Scalar>(pos: &Positions<T>) -> Result<ValuationMatrix<T>> {
    if pos.len() < 2 {
        return Err(Error::TooFewAgents(pos.len()));
    }
    let span = pos.span();
    Ok(ValuationMatrix::symmetric_from_fn(pos.len(), |p, q| {
        span.clone() - pos.distance(p, q) + T::one()
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;
    use crate::Rational;

    fn ints(v: &[i64]) -> Positions<Rational> {
        Positions::new(v.iter().map(|&x| rational(x, 1)).collect())
    }

    #[test]
    fn derived_values_for_small_layout() {
        let m = valuations_from_positions(&ints(&[0, 1, 3])).unwrap();
        let v = |p, q| m.value(AgentId(p), AgentId(q)).unwrap().clone();
        assert_eq!(v(0, 1), rational(3, 1));
        assert_eq!(v(1, 2), rational(2, 1));
        assert_eq!(v(0, 2), rational(1, 1));
        assert_eq!(v(2, 0), rational(1, 1));
    }

    #[test]
    fn coincident_points() {
        let pos = ints(&[0, 0]);
        assert!(!pos.is_unique());
        let m = valuations_from_positions(&pos).unwrap();
        assert_eq!(m.value(AgentId(0), AgentId(1)).unwrap(), &rational(1, 1));
    }

    #[test]
    fn single_agent_is_rejected() {
        assert!(matches!(
            valuations_from_positions(&ints(&[5])),
            Err(Error::TooFewAgents(1))
        ));
    }

    #[test]
    fn self_valuation_is_an_error() {
        let m = ValuationMatrix::from_fn(2, |_, _| rational(1, 1));
        assert!(matches!(
            m.value(AgentId(1), AgentId(1)),
            Err(Error::SelfValuation(1))
        ));
        assert!(ValuationMatrix::new(1, vec![Some(rational(0, 1))]).is_err());
    }

    #[test]
    fn missing_entries_are_listed() {
        let m = ValuationMatrix::new(2, vec![None, Some(rational(1, 1)), None, None]).unwrap();
        assert_eq!(m.missing_pairs().collect::<Vec<_>>(), vec![(1, 0)]);
        assert!(m.value(AgentId(1), AgentId(0)).is_err());
    }

    #[test]
    fn span_and_order() {
        let pos = ints(&[4, -2, 7, 0]);
        assert_eq!(pos.span(), rational(9, 1));
        assert_eq!(pos.left_to_right(), vec![1, 3, 0, 2]);
        assert!(pos.is_unique());
    }
}
