//! Farey tessellation adjacency and the counterclockwise greedy distance.
//!
//! Counterclockwise on `Q ∪ {∞}` is increasing value, wrapping through `∞`.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::slopes::{act, class_of_slope, MappingClass, Slope};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FareyDist {
    pub steps: u32,
}

pub fn is_farey_edge(a: Slope, b: Slope) -> bool {
    let (u, v) = (class_of_slope(a), class_of_slope(b));
    (u.x as i128 * v.y as i128 - u.y as i128 * v.x as i128).abs() == 1
}

/// Compares `u` and `v` by counterclockwise position measured from `base`
/// (`base` itself is position zero).
pub fn ccw_cmp(base: Slope, u: Slope, v: Slope) -> Ordering {
    let class = |w: Slope| match w.cmp_linear(&base) {
        Ordering::Equal => 0,
        Ordering::Greater => 1,
        Ordering::Less => 2,
    };
    class(u).cmp(&class(v)).then_with(|| u.cmp_linear(&v))
}

/// An orientation preserving map sending `c` to `∞`.
fn to_infinity(c: Slope) -> MappingClass {
    if c.is_infinite() {
        return MappingClass::IDENTITY;
    }
    let (n, d) = (c.num(), c.den());
    let e = n.extended_gcd(&d);
    // e.x * n + e.y * d = 1
    MappingClass::new(-n, d, -e.y, -e.x)
}

/// The greedy walk from `a` to `b`, both endpoints included.
pub fn farey_walk(a: Slope, b: Slope) -> Vec<Slope> {
    let mut path = vec![a];
    let mut cur = a;
    while cur != b {
        let m = to_infinity(cur);
        let image = act(&m, b).expect("unimodular image");
        let r = image.to_ratio().expect("b differs from the current point");
        let step = Slope::integer(*r.floor().numer());
        let next = act(&m.inverse().expect("unimodular"), step).expect("unimodular image");
        assert!(is_farey_edge(cur, next), "greedy step must follow an edge");
        assert_eq!(
            ccw_cmp(a, cur, next),
            Ordering::Less,
            "greedy walk must advance counterclockwise"
        );
        assert_ne!(ccw_cmp(a, next, b), Ordering::Greater, "greedy walk overshot");
        path.push(next);
        cur = next;
    }
    path
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FareyPath {
    pub from: Slope,
    pub to: Slope,
    pub steps: u32,
    pub path: Vec<Slope>,
}

pub fn farey_path(a: Slope, b: Slope) -> FareyPath {
    let path = farey_walk(a, b);
    FareyPath { from: a, to: b, steps: (path.len() - 1) as u32, path }
}

pub fn farey_distance(a: Slope, b: Slope) -> FareyDist {
    FareyDist { steps: (farey_walk(a, b).len() - 1) as u32 }
}

/// Vertices with `|num| <= bound` and `den <= bound`, plus `∞`.
pub fn bounded_vertices(bound: i64) -> Vec<Slope> {
    let mut out = vec![Slope::INFINITY];
    for den in 1..=bound {
        for num in -bound..=bound {
            if num.gcd(&den) == 1 {
                out.push(Slope::new(num, den).expect("nonzero"));
            }
        }
    }
    out.sort_by(|u, v| u.cmp_linear(v));
    out
}

/// Edge lists of the bounded Farey graph, indexed like `bounded_vertices`.
pub struct FareyGraph {
    pub vertices: Vec<Slope>,
    index: HashMap<Slope, usize>,
    adj: Vec<Vec<usize>>,
}

impl FareyGraph {
    pub fn new(bound: i64) -> FareyGraph {
        let vertices = bounded_vertices(bound);
        let index = vertices.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut adj = vec![Vec::new(); vertices.len()];
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if is_farey_edge(vertices[i], vertices[j]) {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        FareyGraph { vertices, index, adj }
    }

    /// Breadth-first search along counterclockwise-monotone paths from `a`;
    /// returns the step count to every reachable vertex.
    pub fn monotone_distances(&self, a: Slope) -> Result<HashMap<Slope, u32>> {
        let &src = self.index.get(&a).ok_or(Error::IncreaseBound)?;
        let mut dist = vec![u32::MAX; self.vertices.len()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == u32::MAX
                    && ccw_cmp(a, self.vertices[u], self.vertices[v]) == Ordering::Less
                {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        Ok(self
            .vertices
            .iter()
            .zip(dist)
            .filter(|(_, d)| *d != u32::MAX)
            .map(|(s, d)| (*s, d))
            .collect())
    }
}

/// Independent breadth-first oracle for [`farey_distance`].
pub fn farey_distance_bfs(a: Slope, b: Slope, den_bound: i64) -> Result<FareyDist> {
    let graph = FareyGraph::new(den_bound);
    let dist = graph.monotone_distances(a)?;
    dist.get(&b).map(|&steps| FareyDist { steps }).ok_or(Error::IncreaseBound)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Slope {
        Slope::new(n, d).unwrap()
    }

    #[test]
    fn edges() {
        assert!(is_farey_edge(s(-1, 1), s(-2, 1)));
        assert!(!is_farey_edge(s(-1, 1), s(-3, 1)));
        assert!(is_farey_edge(Slope::ZERO, Slope::INFINITY));
        assert!(is_farey_edge(s(1, 2), s(2, 3)));
    }

    #[test]
    fn slice_distances() {
        assert_eq!(farey_distance(s(-2, 1), s(-1, 1)).steps, 1);
        assert_eq!(farey_distance(s(-3, 1), s(-1, 1)).steps, 2);
        assert_eq!(farey_distance(s(-5, 4), s(-5, 4)).steps, 0);
        assert_eq!(farey_distance_bfs(s(-2, 1), s(-1, 1), 10).unwrap().steps, 1);
        assert_eq!(farey_distance_bfs(s(-3, 1), s(-1, 1), 10).unwrap().steps, 2);
        assert_eq!(
            farey_distance_bfs(s(-5, 4), s(-1, 1), 10).unwrap(),
            farey_distance(s(-5, 4), s(-1, 1))
        );
    }

    #[test]
    fn walk_wraps_through_infinity() {
        let w = farey_walk(s(1, 1), s(-1, 1));
        assert_eq!(w, vec![s(1, 1), Slope::INFINITY, s(-1, 1)]);
        assert_eq!(farey_walk(s(2, 1), s(-2, 1)), vec![s(2, 1), Slope::INFINITY, s(-2, 1)]);
        assert_eq!(farey_distance_bfs(s(2, 1), s(-2, 1), 4).unwrap().steps, 2);
        // adjacent slopes are one step apart in either direction
        assert_eq!(farey_distance(s(2, 1), s(1, 1)).steps, 1);
    }

    #[test]
    fn small_bound_is_reported() {
        assert_eq!(farey_distance_bfs(s(-7, 3), s(-1, 1), 2), Err(Error::IncreaseBound));
    }

    #[test]
    fn ccw_order() {
        let a = s(-2, 1);
        assert_eq!(ccw_cmp(a, s(-1, 1), Slope::INFINITY), Ordering::Less);
        assert_eq!(ccw_cmp(a, Slope::INFINITY, s(-3, 1)), Ordering::Less);
        assert_eq!(ccw_cmp(a, a, s(-3, 1)), Ordering::Less);
    }

    #[test]
    fn distance_one_iff_edge() {
        let vs = bounded_vertices(6);
        for &a in &vs {
            for &b in &vs {
                if a != b {
                    assert_eq!(farey_distance(a, b).steps == 1, is_farey_edge(a, b), "{a} {b}");
                }
            }
        }
    }
}
