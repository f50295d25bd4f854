#![allow(dead_code)]

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thompson_core::presentation::{generator, Letter, Word};
use thompson_core::{Character, End, PlMap};

pub const SEED: u64 = 0x5eed_f00d;

pub fn rng(stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(SEED ^ stream)
}

/// Uniform word of length `0..=max_len` over `x0^±, x1^±`.
pub fn random_word(rng: &mut ChaCha8Rng, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word(
        (0..len)
            .map(|_| Letter::new(rng.gen_range(0..2), rng.gen_bool(0.5)))
            .collect(),
    )
}

pub fn random_character(rng: &mut ChaCha8Rng) -> Character {
    loop {
        let a = BigRational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=4).into());
        let b = BigRational::new(rng.gen_range(-6i64..=6).into(), rng.gen_range(1i64..=4).into());
        let c = Character::new(a, b);
        if !c.is_zero() {
            return c;
        }
    }
}

pub const GENS: [Letter; 4] = [
    Letter { index: 0, inverse: false },
    Letter { index: 0, inverse: true },
    Letter { index: 1, inverse: false },
    Letter { index: 1, inverse: true },
];

fn letter_map(l: Letter) -> PlMap {
    let g = generator(l.index);
    if l.inverse {
        g.inverse()
    } else {
        g
    }
}

/// Cayley ball built with PL maps only: no tree pairs, no hashing, every
/// membership test a linear scan with map equality.
pub struct NaiveBall {
    pub elements: Vec<PlMap>,
    pub lengths: Vec<u32>,
    pub adjacency: Vec<Vec<usize>>,
}

fn position(list: &[PlMap], f: &PlMap) -> Option<usize> {
    list.iter().position(|g| g == f)
}

pub fn naive_ball(radius: u32) -> NaiveBall {
    let gens: Vec<PlMap> = GENS.iter().map(|&l| letter_map(l)).collect();
    let mut elements = vec![PlMap::identity()];
    let mut lengths = vec![0];
    let mut frontier = vec![0usize];
    for level in 1..=radius {
        let mut next = Vec::new();
        for &i in &frontier {
            for s in &gens {
                let h = elements[i].compose(s);
                if position(&elements, &h).is_none() {
                    elements.push(h);
                    lengths.push(level);
                    next.push(elements.len() - 1);
                }
            }
        }
        frontier = next;
    }
    let mut adjacency = vec![Vec::new(); elements.len()];
    for i in 0..elements.len() {
        for s in &gens {
            if let Some(j) = position(&elements, &elements[i].compose(s)) {
                if !adjacency[i].contains(&j) {
                    adjacency[i].push(j);
                }
                if !adjacency[j].contains(&i) {
                    adjacency[j].push(i);
                }
            }
        }
    }
    NaiveBall {
        elements,
        lengths,
        adjacency,
    }
}

fn naive_value(chi: &Character, f: &PlMap) -> BigRational {
    // chi_0 and chi_1 read directly off the first and last segment
    chi.value_on_slopes(f.endpoint_log_slope(End::Zero), f.endpoint_log_slope(End::One))
}

/// `(vertices of B_n with chi >= 0, components they meet in B_N ∩ {chi >= 0})`
/// by depth-first search over the naive ball of radius `N`.
pub fn naive_components(ball: &NaiveBall, inner: u32, chi: &Character) -> (usize, usize) {
    let keep: Vec<bool> = ball
        .elements
        .iter()
        .map(|f| !naive_value(chi, f).is_negative())
        .collect();
    let mut label = vec![usize::MAX; ball.elements.len()];
    let mut next_label = 0;
    for start in 0..ball.elements.len() {
        if !keep[start] || label[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        label[start] = next_label;
        while let Some(v) = stack.pop() {
            for &w in &ball.adjacency[v] {
                if keep[w] && label[w] == usize::MAX {
                    label[w] = next_label;
                    stack.push(w);
                }
            }
        }
        next_label += 1;
    }
    let inner_vertices: Vec<usize> = (0..ball.elements.len())
        .filter(|&v| keep[v] && ball.lengths[v] <= inner)
        .collect();
    let labels: HashSet<usize> = inner_vertices.iter().map(|&v| label[v]).collect();
    (inner_vertices.len(), labels.len())
}

/// Sign patterns in the complement of `Sigma^n(F)`.
fn complement_f(n: u32) -> HashSet<Vec<i8>> {
    match n {
        0 => HashSet::new(),
        1 => [vec![1, 0], vec![0, 1]].into_iter().collect(),
        _ => [vec![1, 0], vec![0, 1], vec![1, 1]].into_iter().collect(),
    }
}

fn all_patterns(len: usize) -> Vec<Vec<i8>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| {
                [-1i8, 0, 1].into_iter().map(move |s| {
                    let mut q = p.clone();
                    q.push(s);
                    q
                })
            })
            .collect();
    }
    out.retain(|p| p.iter().any(|&s| s != 0));
    out
}

/// Join of two complements: a nonzero pattern on the product splits into
/// its two halves; it lies in `A * B` when each nonzero half lies in the
/// corresponding set (an empty set contributes nothing to the join).
fn in_join(p: &[i8], split: usize, a: &HashSet<Vec<i8>>, b: &HashSet<Vec<i8>>) -> bool {
    let (left, right) = p.split_at(split);
    let lz = left.iter().all(|&s| s == 0);
    let rz = right.iter().all(|&s| s == 0);
    match (lz, rz) {
        (true, true) => false,
        (false, true) => a.contains(left),
        (true, false) => b.contains(right),
        (false, false) => a.contains(left) && b.contains(right),
    }
}

/// Complement of `Sigma^n(F^r)` from the product formula, recursively in `r`.
pub fn complement_fr(r: usize, n: u32) -> HashSet<Vec<i8>> {
    if r == 1 {
        return complement_f(n);
    }
    let pairs: Vec<_> = (0..=n)
        .map(|k| (complement_f(k), complement_fr(r - 1, n - k)))
        .collect();
    all_patterns(2 * r)
        .into_iter()
        .filter(|p| pairs.iter().any(|(a, b)| in_join(p, 2, a, b)))
        .collect()
}

/// `None` for Sigma^infinity, else the least `n` whose complement holds `p`.
pub fn join_formula_level(p: &[i8], complements: &[HashSet<Vec<i8>>]) -> Option<u32> {
    complements
        .iter()
        .position(|c| c.contains(p))
        .map(|n| n as u32)
}

pub fn patterns(r: usize) -> Vec<Vec<i8>> {
    all_patterns(2 * r)
}
