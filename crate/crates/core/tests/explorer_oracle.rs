mod common;

use std::collections::HashSet;

use common::{naive_ball, naive_components, random_character, rng};
use thompson_core::explorer::{build_ball, sublevel_components_in, DEFAULT_MAX_VERTICES};
use thompson_core::presentation::generator;
use thompson_core::{Character, End, Error};

#[test]
fn ball_sizes_match_naive_enumeration() {
    let naive = naive_ball(4);
    for r in 0..=4 {
        let fast = build_ball(r, DEFAULT_MAX_VERTICES).unwrap();
        let expected = naive.lengths.iter().filter(|&&l| l <= r).count();
        assert_eq!(fast.vertices.len(), expected, "radius {r}");
        assert_eq!(fast.count_within(r), expected);
        let mut naive_lengths: Vec<u32> = naive.lengths.iter().copied().filter(|&l| l <= r).collect();
        let mut fast_lengths: Vec<u32> = fast.vertices.iter().map(|v| v.word_length).collect();
        naive_lengths.sort();
        fast_lengths.sort();
        assert_eq!(fast_lengths, naive_lengths);
    }
}

#[test]
fn small_balls_by_hand() {
    // B_1: identity and the four generators; B_2 counted from the naive walk
    assert_eq!(build_ball(0, 10).unwrap().vertices.len(), 1);
    assert_eq!(build_ball(1, 10).unwrap().vertices.len(), 5);
    assert_eq!(build_ball(2, 100).unwrap().vertices.len(), naive_ball(2).elements.len());
}

#[test]
fn sphere_sizes_match_known_growth_series() {
    let ball = build_ball(7, DEFAULT_MAX_VERTICES).unwrap();
    let spheres: Vec<usize> = (0..=7)
        .map(|r| ball.vertices.iter().filter(|v| v.word_length == r).count())
        .collect();
    assert_eq!(spheres, [1, 4, 12, 36, 108, 314, 906, 2576]);
}

#[test]
fn vertex_elements_are_distinct_maps() {
    let ball = build_ball(4, DEFAULT_MAX_VERTICES).unwrap();
    let maps: HashSet<String> = ball.vertices.iter().map(|v| v.element.to_pl().to_string()).collect();
    assert_eq!(maps.len(), ball.vertices.len());
}

#[test]
fn component_counts_match_naive_dfs() {
    let naive = naive_ball(4);
    let ball = build_ball(4, DEFAULT_MAX_VERTICES).unwrap();
    let mut chars = vec![
        Character::from_ints(1, 0),
        Character::from_ints(0, 1),
        Character::from_ints(1, 1),
        Character::from_ints(-1, 1),
        Character::from_ints(-1, -1),
        Character::from_ints(2, 1),
    ];
    let mut g = rng(9);
    chars.extend((0..6).map(|_| random_character(&mut g)));
    for chi in &chars {
        for inner in 0..=4 {
            let fast = sublevel_components_in(&ball, inner, chi).unwrap();
            let (count, comps) = naive_components(&naive, inner, chi);
            assert_eq!(fast.vertices_in_sublevel, count, "{chi:?} n={inner}");
            assert_eq!(fast.components, comps, "{chi:?} n={inner}");
            assert_eq!(fast.representatives.len(), comps);
        }
    }
}

#[test]
fn component_counts_do_not_increase_with_outer_radius() {
    let big = build_ball(6, DEFAULT_MAX_VERTICES).unwrap();
    for chi in [
        Character::from_ints(1, 0),
        Character::from_ints(0, 1),
        Character::from_ints(1, 1),
        Character::from_ints(-1, 1),
    ] {
        for inner in 0..=3 {
            let mut prev = usize::MAX;
            for outer in inner..=6 {
                let ball = build_ball(outer, DEFAULT_MAX_VERTICES).unwrap();
                let c = sublevel_components_in(&ball, inner, &chi).unwrap().components;
                assert!(c <= prev, "{chi:?} n={inner} N={outer}");
                prev = c;
            }
            assert_eq!(prev, sublevel_components_in(&big, inner, &chi).unwrap().components);
        }
    }
}

#[test]
fn frozen_regression_counts() {
    let chi = Character::from_ints(1, 0);
    let expected = [(4, 161, 9), (5, 475, 7), (6, 1381, 7), (7, 3957, 7), (8, 11237, 7)];
    for (outer, size, components) in expected {
        let ball = build_ball(outer, DEFAULT_MAX_VERTICES).unwrap();
        assert_eq!(ball.vertices.len(), size);
        assert_eq!(sublevel_components_in(&ball, 4, &chi).unwrap().components, components);
    }
}

#[test]
fn cocycle_holds_on_every_edge() {
    let ball = build_ball(6, DEFAULT_MAX_VERTICES).unwrap();
    let steps: Vec<(i64, i64)> = [0u32, 1]
        .iter()
        .map(|&i| {
            let g = generator(i);
            (g.endpoint_log_slope(End::Zero), g.endpoint_log_slope(End::One))
        })
        .collect();
    for e in &ball.edges {
        let (a0, a1) = ball.vertices[e.lo].log_slopes;
        let (b0, b1) = ball.vertices[e.hi].log_slopes;
        let (s0, s1) = steps[e.letter.index as usize];
        let sign = if e.letter.inverse { -1 } else { 1 };
        assert_eq!((b0, b1), (a0 + sign * s0, a1 + sign * s1));
        let hi = ball.vertices[e.lo].element.multiply(&generator_pair(e.letter));
        assert_eq!(hi, ball.vertices[e.hi].element);
    }
    for v in &ball.vertices {
        let f = v.element.to_pl();
        assert_eq!(v.log_slopes, (f.endpoint_log_slope(End::Zero), f.endpoint_log_slope(End::One)));
    }
}

fn generator_pair(l: thompson_core::Letter) -> thompson_core::TreePair {
    let g = thompson_core::presentation::generator_tree(l.index);
    if l.inverse {
        g.inverse()
    } else {
        g
    }
}

#[test]
fn budget_is_enforced() {
    assert!(matches!(build_ball(6, 100), Err(Error::BudgetExceeded(100))));
}
