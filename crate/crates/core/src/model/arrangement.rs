use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{AgentId, VertexId};

/// A bijection from agents to seats, stored in both directions.
///
/// Serialises as `{"seat_of": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SeatList", into = "SeatList")]
pub struct Arrangement {
    seat_of: Vec<usize>,
    agent_at: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SeatList {
    seat_of: Vec<usize>,
}

impl TryFrom<SeatList> for Arrangement {
    type Error = Error;

    fn try_from(list: SeatList) -> Result<Self> {
        Arrangement::new(list.seat_of)
    }
}

impl From<Arrangement> for SeatList {
    fn from(arr: Arrangement) -> Self {
        SeatList { seat_of: arr.seat_of }
    }
}

impl Arrangement {
    /// Builds an arrangement from the seat of every agent.
    pub fn new(seat_of: Vec<usize>) -> Result<Self> {
        let n = seat_of.len();
        let mut agent_at = vec![usize::MAX; n];
        for (p, &v) in seat_of.iter().enumerate() {
            if v >= n {
                return Err(Error::NotBijection(format!(
                    "agent {p} seated at vertex {v}, only {n} vertices"
                )));
            }
            if agent_at[v] != usize::MAX {
                return Err(Error::NotBijection(format!(
                    "vertex {v} holds agents {} and {p}",
                    agent_at[v]
                )));
            }
            agent_at[v] = p;
        }
        Ok(Arrangement { seat_of, agent_at })
    }

    /// Builds an arrangement from the agent sitting on every vertex.
    pub fn from_agent_at(agent_at: Vec<usize>) -> Result<Self> {
        let inverse = Arrangement::new(agent_at)?;
        Ok(Arrangement {
            seat_of: inverse.agent_at,
            agent_at: inverse.seat_of,
        })
    }

    pub fn identity(n: usize) -> Self {
        Arrangement {
            seat_of: (0..n).collect(),
            agent_at: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.seat_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seat_of.is_empty()
    }

    pub fn seat_of(&self, p: AgentId) -> VertexId {
        VertexId(self.seat_of[p.0])
    }

    pub fn agent_at(&self, v: VertexId) -> AgentId {
        AgentId(self.agent_at[v.0])
    }

    /// Seat per agent, indexed by agent.
    pub fn seats(&self) -> &[usize] {
        &self.seat_of
    }

    /// Agent per seat, indexed by vertex.
    pub fn occupants(&self) -> &[usize] {
        &self.agent_at
    }

    /// The arrangement with `p` and `q` exchanging seats.
    pub fn swap(&self, p: AgentId, q: AgentId) -> Result<Arrangement> {
        if p == q {
            return Err(Error::SameAgent(p.0));
        }
        for a in [p, q] {
            if a.0 >= self.len() {
                return Err(Error::OutOfRange {
                    what: "agents",
                    index: a.0,
                    len: self.len(),
                });
            }
        }
        let mut out = self.clone();
        out.swap_in_place(p.0, q.0);
        Ok(out)
    }

    pub(crate) fn swap_in_place(&mut self, p: usize, q: usize) {
        let (u, v) = (self.seat_of[p], self.seat_of[q]);
        self.seat_of.swap(p, q);
        self.agent_at[u] = q;
        self.agent_at[v] = p;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn swap_two_agents() {
        let arr = Arrangement::new(vec![0, 1]).unwrap();
        let s = arr.swap(AgentId(0), AgentId(1)).unwrap();
        assert_eq!(s.seats(), &[1, 0]);
        assert_eq!(s.agent_at(VertexId(0)), AgentId(1));
    }

    #[test]
    fn swap_leaves_third_agent() {
        let arr = Arrangement::identity(3);
        let s = arr.swap(AgentId(0), AgentId(1)).unwrap();
        assert_eq!(s.seat_of(AgentId(2)), VertexId(2));
    }

    #[test]
    fn swap_with_self_fails() {
        let arr = Arrangement::identity(3);
        assert!(matches!(
            arr.swap(AgentId(1), AgentId(1)),
            Err(Error::SameAgent(1))
        ));
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Arrangement::new(vec![0, 0]).is_err());
        assert!(Arrangement::new(vec![0, 2]).is_err());
        let a = Arrangement::from_agent_at(vec![2, 0, 1]).unwrap();
        assert_eq!(a.seats(), &[1, 2, 0]);
    }

    #[test]
    fn json_shape() {
        let arr = Arrangement::new(vec![2, 0, 1]).unwrap();
        let text = serde_json::to_string(&arr).unwrap();
        assert_eq!(text, r#"{"seat_of":[2,0,1]}"#);
        assert_eq!(serde_json::from_str::<Arrangement>(&text).unwrap(), arr);
        assert!(serde_json::from_str::<Arrangement>(r#"{"seat_of":[0,0]}"#).is_err());
    }

    proptest! {
        #[test]
        fn swap_is_an_involution(perm in Just((0..9usize).collect::<Vec<_>>()).prop_shuffle(),
                                 p in 0..9usize, q in 0..9usize) {
            prop_assume!(p != q);
            let arr = Arrangement::new(perm).unwrap();
            let once = arr.swap(AgentId(p), AgentId(q)).unwrap();
            for (v, &a) in once.occupants().iter().enumerate() {
                prop_assert_eq!(once.seats()[a], v);
            }
            for r in (0..9).filter(|&r| r != p && r != q) {
                prop_assert_eq!(once.seats()[r], arr.seats()[r]);
            }
            prop_assert_eq!(once.swap(AgentId(p), AgentId(q)).unwrap(), arr);
        }
    }
}
