//! Corners read off the boundary path, compared with the library's run
//! analysis.
//!
//! The path walks the upper boundary of the bargraph as unit steps: up to the
//! first column, one east step per column with vertical steps between, down
//! to the floor at the end. After run-length encoding, a down run followed by
//! an east run is a type A corner and an east run followed by a down run is a
//! type B corner.

use proptest::prelude::*;

use corners::bargraph::enumerate_bargraphs;
use corners::{Bargraph, CornerKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    U,
    H,
    D,
}

fn boundary(heights: &[u32]) -> Vec<Step> {
    let mut path = Vec::new();
    let mut level = 0u32;
    for &h in heights {
        if h > level {
            path.extend(std::iter::repeat_n(Step::U, (h - level) as usize));
        } else {
            path.extend(std::iter::repeat_n(Step::D, (level - h) as usize));
        }
        path.push(Step::H);
        level = h;
    }
    path.extend(std::iter::repeat_n(Step::D, level as usize));
    path
}

/// `(step, run length, east steps taken before the run)`.
fn runs(path: &[Step]) -> Vec<(Step, u32, usize)> {
    let mut out: Vec<(Step, u32, usize)> = Vec::new();
    let mut east = 0;
    for &s in path {
        match out.last_mut() {
            Some(r) if r.0 == s => r.1 += 1,
            _ => out.push((s, 1, east)),
        }
        if s == Step::H {
            east += 1;
        }
    }
    out
}

/// Sorted `(kind, a, b, column)` tuples.
fn path_corners(heights: &[u32]) -> Vec<(CornerKind, u32, u32, usize)> {
    let rs = runs(&boundary(heights));
    let mut out = Vec::new();
    for w in rs.windows(2) {
        match (w[0], w[1]) {
            ((Step::D, a, _), (Step::H, b, before)) => out.push((CornerKind::A, a, b, before + 1)),
            ((Step::H, a, before), (Step::D, b, _)) => out.push((CornerKind::B, a, b, before + a as usize)),
            _ => {}
        }
    }
    out.sort();
    out
}

fn library_corners(heights: &[u32]) -> Vec<(CornerKind, u32, u32, usize)> {
    let g = Bargraph::new(heights.to_vec()).unwrap();
    let mut out: Vec<_> = g.corners().iter().map(|c| (c.kind, c.a, c.b, c.col)).collect();
    out.sort();
    out
}

fn listed(word: &str) -> Vec<String> {
    let g: Bargraph = word.parse().unwrap();
    g.corners().iter().map(|c| c.to_string()).collect()
}

#[test]
fn example_bargraph_corners() {
    let h = [2, 4, 4, 4, 1, 1, 3, 2, 2];
    assert_eq!(library_corners(&h), path_corners(&h));
    let mut got = listed("244411322");
    got.sort();
    let mut want = vec!["A(3,2)@5", "A(1,2)@8", "B(3,3)@4", "B(1,1)@7", "B(2,2)@9"];
    want.sort();
    assert_eq!(got, want);
}

#[test]
fn small_words() {
    assert!(listed("").is_empty());
    assert_eq!(listed("1"), ["B(1,1)@1"]);
    assert_eq!(listed("121"), ["B(1,1)@2", "A(1,1)@3", "B(1,1)@3"]);
    assert_eq!(listed("111"), ["B(3,1)@3"]);
    for h in [vec![1, 2, 1], vec![1, 1, 1], vec![3], vec![2, 1]] {
        assert_eq!(library_corners(&h), path_corners(&h));
    }
}

#[test]
fn every_composition_up_to_twelve() {
    for n in 0..=12 {
        for g in enumerate_bargraphs(n, None, None) {
            assert_eq!(library_corners(g.heights()), path_corners(g.heights()), "{g}");
        }
    }
}

proptest! {
    #[test]
    fn random_bargraphs(h in prop::collection::vec(1u32..15, 0..40)) {
        prop_assert_eq!(library_corners(&h), path_corners(&h));
    }
}
