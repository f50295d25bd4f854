//! Finite pieces of the Cayley graph of F on `{x0, x1}` and the sublevel
//! sets `{g : chi(g) >= 0}`.
//!
//! Everything computed here is finite-radius evidence about connectivity of
//! the sublevel graph. It is never a proof of membership in Sigma^1.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Signed;
use rayon::prelude::*;
use serde::Serialize;

use crate::characters::Character;
use crate::dyadic::Dyadic;
use crate::error::{Error, Result};
use crate::pl::{End, PlMap, Subgroup};
use crate::presentation::{generator, generator_tree, normal_form, Letter};
use crate::treepair::TreePair;

/// Default cap on ball size.
pub const DEFAULT_MAX_VERTICES: usize = 2_000_000;

/// Generators in edge-label order: `x0, x0^-1, x1, x1^-1`.
pub const GENERATORS: [Letter; 4] = [
    Letter { index: 0, inverse: false },
    Letter { index: 0, inverse: true },
    Letter { index: 1, inverse: false },
    Letter { index: 1, inverse: true },
];

fn generator_pairs() -> [TreePair; 4] {
    GENERATORS.map(|l| {
        let g = generator_tree(l.index);
        if l.inverse {
            g.inverse()
        } else {
            g
        }
    })
}

#[derive(Clone, Debug)]
pub struct Vertex {
    pub key: Vec<u8>,
    pub element: TreePair,
    pub word_length: u32,
    /// `(chi_0, chi_1)` of the element.
    pub log_slopes: (i64, i64),
}

/// Edge `{lo, hi}` with `hi = lo * letter`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub lo: usize,
    pub hi: usize,
    pub letter: Letter,
}

/// The ball of a given radius about the identity, vertices sorted by
/// canonical key.
#[derive(Clone, Debug)]
pub struct BallGraph {
    pub radius: u32,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
}

impl BallGraph {
    pub fn index_of(&self, key: &[u8]) -> Option<usize> {
        self.vertices
            .binary_search_by(|v| v.key.as_slice().cmp(key))
            .ok()
    }

    pub fn identity_index(&self) -> usize {
        self.index_of(&TreePair::identity().key_unchecked())
            .expect("identity is in every ball")
    }

    pub fn char_value(&self, v: usize, chi: &Character) -> BigRational {
        let (l0, l1) = self.vertices[v].log_slopes;
        chi.value_on_slopes(l0, l1)
    }

    /// Number of vertices of word length `<= r`.
    pub fn count_within(&self, r: u32) -> usize {
        self.vertices.iter().filter(|v| v.word_length <= r).count()
    }
}

/// Builds the ball by breadth-first search. Each BFS level is multiplied
/// out in parallel and merged in a fixed order, so the result does not
/// depend on scheduling.
pub fn build_ball(radius: u32, max_vertices: usize) -> Result<BallGraph> {
    let gens = generator_pairs();
    let identity = TreePair::identity();
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut elements: Vec<(TreePair, Vec<u8>, u32)> = Vec::new();
    index.insert(identity.key_unchecked(), 0);
    elements.push((identity.clone(), identity.key_unchecked(), 0));
    let mut raw_edges: Vec<(usize, usize, usize)> = Vec::new();

    let mut level_start = 0;
    for level in 0..=radius {
        let level_end = elements.len();
        let products: Vec<Vec<(TreePair, Vec<u8>)>> = elements[level_start..level_end]
            .par_iter()
            .map(|(g, _, _)| {
                gens.iter()
                    .map(|s| {
                        let h = g.multiply(s);
                        let k = h.key_unchecked();
                        (h, k)
                    })
                    .collect()
            })
            .collect();
        for (offset, row) in products.into_iter().enumerate() {
            let from = level_start + offset;
            for (gi, (h, key)) in row.into_iter().enumerate() {
                let to = match index.get(&key) {
                    Some(&j) => Some(j),
                    None if level < radius => {
                        if elements.len() >= max_vertices {
                            return Err(Error::BudgetExceeded(max_vertices));
                        }
                        let j = elements.len();
                        index.insert(key.clone(), j);
                        elements.push((h, key, level + 1));
                        Some(j)
                    }
                    None => None,
                };
                if let Some(to) = to {
                    raw_edges.push((from, to, gi));
                }
            }
        }
        level_start = level_end;
    }

    // relabel by canonical key
    let mut order: Vec<usize> = (0..elements.len()).collect();
    order.sort_by(|&i, &j| elements[i].1.cmp(&elements[j].1));
    let mut new_index = vec![0; elements.len()];
    for (new, &old) in order.iter().enumerate() {
        new_index[old] = new;
    }
    let mut slots: Vec<Option<(TreePair, Vec<u8>, u32)>> = elements.into_iter().map(Some).collect();
    let vertices = order
        .iter()
        .map(|&old| {
            let (element, key, word_length) = slots[old].take().expect("each vertex once");
            let log_slopes = (element.log_slope(End::Zero), element.log_slope(End::One));
            Vertex {
                key,
                element,
                word_length,
                log_slopes,
            }
        })
        .collect();
    let mut edges: Vec<Edge> = raw_edges
        .into_iter()
        .map(|(from, to, gi)| {
            let (a, b) = (new_index[from], new_index[to]);
            let letter = GENERATORS[gi];
            if a < b {
                Edge { lo: a, hi: b, letter }
            } else {
                Edge {
                    lo: b,
                    hi: a,
                    letter: letter.inverted(),
                }
            }
        })
        .collect();
    edges.sort();
    edges.dedup();
    Ok(BallGraph {
        radius,
        vertices,
        edges,
    })
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.rank[a] < self.rank[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        if self.rank[a] == self.rank[b] {
            self.rank[a] += 1;
        }
    }
}

/// Components of `B_n ∩ {chi >= 0}` as seen inside `B_N ∩ {chi >= 0}`.
#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub inner_radius: u32,
    pub outer_radius: u32,
    pub char_a: String,
    pub char_b: String,
    pub vertices_in_sublevel: usize,
    pub components: usize,
    /// Lowest-key vertex of each component, as a normal form.
    pub representatives: Vec<String>,
}

/// Sublevel analysis on an already built ball of radius `N`.
pub fn sublevel_components_in(ball: &BallGraph, inner: u32, chi: &Character) -> Result<ComponentReport> {
    if chi.is_zero() {
        return Err(Error::ZeroCharacter);
    }
    if inner > ball.radius {
        return Err(Error::BallSpec {
            inner: inner as usize,
            outer: ball.radius as usize,
        });
    }
    let in_sublevel: Vec<bool> = (0..ball.vertices.len())
        .map(|v| !ball.char_value(v, chi).is_negative())
        .collect();
    let mut uf = UnionFind::new(ball.vertices.len());
    for e in &ball.edges {
        if in_sublevel[e.lo] && in_sublevel[e.hi] {
            uf.union(e.lo, e.hi);
        }
    }
    let mut seen: HashMap<usize, usize> = HashMap::new();
    let mut representatives = Vec::new();
    let mut count = 0;
    for (v, vertex) in ball.vertices.iter().enumerate() {
        if !in_sublevel[v] || vertex.word_length > inner {
            continue;
        }
        count += 1;
        let root = uf.find(v);
        if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(root) {
            slot.insert(v);
            representatives.push(normal_form(&vertex.element).to_string());
        }
    }
    Ok(ComponentReport {
        inner_radius: inner,
        outer_radius: ball.radius,
        char_a: chi.a.to_string(),
        char_b: chi.b.to_string(),
        vertices_in_sublevel: count,
        components: seen.len(),
        representatives,
    })
}

pub fn sublevel_components(
    inner: u32,
    outer: u32,
    chi: &Character,
    max_vertices: usize,
) -> Result<ComponentReport> {
    if inner > outer {
        return Err(Error::BallSpec {
            inner: inner as usize,
            outer: outer as usize,
        });
    }
    let ball = build_ball(outer, max_vertices)?;
    sublevel_components_in(&ball, inner, chi)
}

/// Monotonicity of a finite orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Constant,
    StrictlyIncreasing,
    StrictlyDecreasing,
    Mixed,
}

fn trend(start: &Dyadic, orbit: &[Dyadic]) -> Trend {
    let mut prev = start;
    let (mut up, mut down, mut flat) = (true, true, true);
    for x in orbit {
        up &= x > prev;
        down &= x < prev;
        flat &= x == prev;
        prev = x;
    }
    match (flat, up, down) {
        (true, _, _) => Trend::Constant,
        (_, true, _) => Trend::StrictlyIncreasing,
        (_, _, true) => Trend::StrictlyDecreasing,
        _ => Trend::Mixed,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrbitReport {
    pub epsilon: String,
    pub log_slope_at_zero: i64,
    pub log_slope_at_one: i64,
    #[serde(serialize_with = "display_seq")]
    pub lower_orbit: Vec<Dyadic>,
    #[serde(serialize_with = "display_seq")]
    pub upper_orbit: Vec<Dyadic>,
    pub lower_trend: Trend,
    pub upper_trend: Trend,
    /// Slope >= 1 at 0 keeps `t^n(eps) >= eps`; slope < 1 drives it
    /// strictly down towards 0 (and symmetrically at 1).
    pub dichotomy_holds: bool,
}

fn display_seq<S: serde::Serializer>(v: &[Dyadic], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|d| d.to_string()))
}

/// Largest `2^-k` such that `t` is linear on `[0, eps]` and `[1-eps, 1]`.
pub fn linear_end_epsilon(t: &PlMap) -> Dyadic {
    let pts = t.breakpoints();
    let first = pts[1].0.clone();
    let last = &Dyadic::one() - &pts[pts.len() - 2].0;
    let bound = first.min(last);
    let mut k = 0;
    while Dyadic::pow2(-k) > bound {
        k += 1;
    }
    Dyadic::pow2(-k)
}

/// Iterates `t` on `eps` and `1 - eps` and checks the endpoint dichotomy.
pub fn support_dynamics(t: &PlMap, iterations: u32, epsilon: Option<Dyadic>) -> Result<OrbitReport> {
    if t.is_identity() {
        return Err(Error::IdentityElement);
    }
    let max_eps = linear_end_epsilon(t);
    let eps = match epsilon {
        None => max_eps,
        Some(e) => {
            if !e.is_positive() || e > max_eps {
                return Err(Error::InvalidEpsilon(
                    e.to_string(),
                    format!("must lie in (0, {max_eps}]"),
                ));
            }
            e
        }
    };
    let s0 = t.endpoint_log_slope(End::Zero);
    let s1 = t.endpoint_log_slope(End::One);
    let top = &Dyadic::one() - &eps;
    let orbit = |start: &Dyadic| -> Result<Vec<Dyadic>> {
        let mut x = start.clone();
        (0..iterations)
            .map(|_| {
                x = t.eval(&x)?;
                Ok(x.clone())
            })
            .collect()
    };
    let lower_orbit = orbit(&eps)?;
    let upper_orbit = orbit(&top)?;
    let lower_trend = trend(&eps, &lower_orbit);
    let upper_trend = trend(&top, &upper_orbit);

    let lower_ok = if s0 >= 0 {
        lower_orbit.iter().all(|x| *x >= eps)
    } else {
        lower_trend == Trend::StrictlyDecreasing
            && lower_orbit
                .iter()
                .zip(1..)
                .all(|(x, n)| *x <= eps.mul_pow2(-(n as i64)))
    };
    let upper_ok = if s1 >= 0 {
        upper_orbit.iter().all(|x| *x <= top)
    } else {
        upper_trend == Trend::StrictlyIncreasing
            && upper_orbit
                .iter()
                .zip(1..)
                .all(|(x, n)| &Dyadic::one() - x <= eps.mul_pow2(-(n as i64)))
    };
    Ok(OrbitReport {
        epsilon: eps.to_string(),
        log_slope_at_zero: s0,
        log_slope_at_one: s1,
        lower_orbit,
        upper_orbit,
        lower_trend,
        upper_trend,
        dichotomy_holds: lower_ok && upper_ok,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessOutcome {
    /// Least `n` with `x0^-n g x0^n` in `F(1)`.
    Depth(u32),
    ExceedsMax(u32),
}

/// For `g` in `ker chi_0`, the least `n >= 0` with `x0^-n g x0^n` fixing
/// `[0, 1/2]` pointwise.
pub fn ascending_union_witness(g: &PlMap, max_n: u32) -> Result<WitnessOutcome> {
    let v = g.endpoint_log_slope(End::Zero);
    if v != 0 {
        return Err(Error::NotInKernel(v.to_string()));
    }
    let x0 = generator(0);
    let x0_inv = x0.inverse();
    let mut c = g.clone();
    for n in 0..=max_n {
        if c.is_member(Subgroup::Shifted(1)) {
            return Ok(WitnessOutcome::Depth(n));
        }
        c = x0_inv.compose(&c).compose(&x0);
    }
    Ok(WitnessOutcome::ExceedsMax(max_n))
}
