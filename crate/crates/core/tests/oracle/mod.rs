//! Straightforward re-implementations used to cross-check the library.
//! Everything here works on plain vectors and recomputes from scratch.
#![allow(dead_code)]

use seatplan::model::Arrangement;
use seatplan::{AgentId, Instance, Rational, UtilityType};

pub struct Plain {
    pub n: usize,
    pub f: Vec<Vec<Rational>>,
    pub adj: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize)>,
    pub rule: UtilityType,
}

impl Plain {
    pub fn new(inst: &Instance) -> Plain {
        let n = inst.agent_count();
        let zero = Rational::from_integer(0.into());
        let f = (0..n)
            .map(|p| {
                (0..n)
                    .map(|q| {
                        if p == q {
                            zero.clone()
                        } else {
                            inst.valuations().value(AgentId(p), AgentId(q)).unwrap().clone()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut adj = vec![Vec::new(); n];
        let mut edges = Vec::new();
        for &(u, v) in inst.seats().edges() {
            adj[u].push(v);
            adj[v].push(u);
            edges.push((u, v));
        }
        Plain {
            n,
            f,
            adj,
            edges,
            rule: inst.utility(),
        }
    }

    fn occupants(&self, seat_of: &[usize]) -> Vec<usize> {
        let mut at = vec![usize::MAX; self.n];
        for (p, &v) in seat_of.iter().enumerate() {
            at[v] = p;
        }
        at
    }

    pub fn utility(&self, seat_of: &[usize], p: usize) -> Rational {
        let at = self.occupants(seat_of);
        let vals: Vec<Rational> = self.adj[seat_of[p]].iter().map(|&w| self.f[p][at[w]].clone()).collect();
        if vals.is_empty() {
            return Rational::from_integer(0.into());
        }
        match self.rule {
            UtilityType::S => vals.into_iter().fold(Rational::from_integer(0.into()), |a, b| a + b),
            UtilityType::B => vals.into_iter().max().unwrap(),
            UtilityType::W => vals.into_iter().min().unwrap(),
        }
    }

    pub fn envies(&self, seat_of: &[usize], p: usize, q: usize) -> bool {
        let mut swapped = seat_of.to_vec();
        swapped.swap(p, q);
        self.utility(&swapped, p) > self.utility(seat_of, p)
    }

    pub fn envy_free(&self, seat_of: &[usize]) -> bool {
        (0..self.n).all(|p| (0..self.n).all(|q| p == q || !self.envies(seat_of, p, q)))
    }

    pub fn stable(&self, seat_of: &[usize]) -> bool {
        (0..self.n).all(|p| (p + 1..self.n).all(|q| !(self.envies(seat_of, p, q) && self.envies(seat_of, q, p))))
    }

    pub fn welfare(&self, seat_of: &[usize]) -> Rational {
        (0..self.n).fold(Rational::from_integer(0.into()), |a, p| a + self.utility(seat_of, p))
    }

    pub fn min_utility(&self, seat_of: &[usize]) -> Rational {
        (0..self.n).map(|p| self.utility(seat_of, p)).min().unwrap()
    }

    /// Distinct pair values, descending.
    pub fn levels(&self) -> Vec<Rational> {
        let mut l: Vec<Rational> = (0..self.n)
            .flat_map(|p| (p + 1..self.n).map(move |q| (p, q)))
            .map(|(p, q)| self.f[p][q].clone())
            .collect();
        l.sort();
        l.dedup();
        l.reverse();
        l
    }

    /// Edges per level, aligned with [`Plain::levels`].
    pub fn score_counts(&self, seat_of: &[usize]) -> Vec<usize> {
        let levels = self.levels();
        let at = self.occupants(seat_of);
        let mut counts = vec![0; levels.len()];
        for &(u, v) in &self.edges {
            let s = &self.f[at[u]][at[v]];
            counts[levels.iter().position(|l| l == s).unwrap()] += 1;
        }
        counts
    }

    /// Every seat assignment, by brute force.
    pub fn all_arrangements(&self) -> Vec<Vec<usize>> {
        fn go(k: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for v in 0..k {
                if !used[v] {
                    used[v] = true;
                    cur.push(v);
                    go(k, cur, used, out);
                    cur.pop();
                    used[v] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(self.n, &mut Vec::new(), &mut vec![false; self.n], &mut out);
        out
    }
}

/// Lower edge counts at the lowest differing level win.
pub fn w_better(a: &[usize], b: &[usize]) -> bool {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        if x != y {
            return x < y;
        }
    }
    false
}

pub fn seats(arr: &Arrangement) -> Vec<usize> {
    arr.seats().to_vec()
}

/// Any assignment of items to bins within capacity.
pub fn packable(sizes: &[usize], capacity: usize, bins: usize) -> bool {
    fn go(sizes: &[usize], load: &mut [usize], cap: usize) -> bool {
        let Some((&s, rest)) = sizes.split_first() else {
            return true;
        };
        for b in 0..load.len() {
            if load[b] + s <= cap {
                load[b] += s;
                let ok = go(rest, load, cap);
                load[b] -= s;
                if ok {
                    return true;
                }
            }
        }
        false
    }
    go(sizes, &mut vec![0; bins], capacity)
}

/// Whether the graph on `n` vertices splits into vertex-disjoint triangles.
pub fn has_triangle_partition(n: usize, edges: &[(usize, usize)]) -> bool {
    let adj = |u: usize, v: usize| edges.contains(&(u, v)) || edges.contains(&(v, u));
    fn go(n: usize, covered: &mut [bool], adj: &dyn Fn(usize, usize) -> bool) -> bool {
        let Some(a) = (0..n).find(|&v| !covered[v]) else {
            return true;
        };
        for b in 0..n {
            for c in b + 1..n {
                if b == a || c == a || covered[b] || covered[c] {
                    continue;
                }
                if adj(a, b) && adj(b, c) && adj(a, c) {
                    covered[a] = true;
                    covered[b] = true;
                    covered[c] = true;
                    let ok = go(n, covered, adj);
                    covered[a] = false;
                    covered[b] = false;
                    covered[c] = false;
                    if ok {
                        return true;
                    }
                }
            }
        }
        false
    }
    n.is_multiple_of(3) && go(n, &mut vec![false; n], &adj)
}

/// Checks that `part` covers `0..n` exactly once with triangles of the graph.
pub fn is_triangle_partition(n: usize, edges: &[(usize, usize)], part: &[[usize; 3]]) -> bool {
    let adj = |u: usize, v: usize| edges.contains(&(u, v)) || edges.contains(&(v, u));
    let mut seen = vec![false; n];
    for t in part {
        if !(adj(t[0], t[1]) && adj(t[1], t[2]) && adj(t[0], t[2])) {
            return false;
        }
        for &v in t {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
    }
    seen.iter().all(|&s| s)
}
