//! Literal constructors, fixtures and random generators for tests and
//! benchmarks. Enabled by the `testing` feature.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::Rng;

use crate::plmap::{Breakpoint, Homeo, Reparam};
use crate::rat::{parse_rat, Rat};
use crate::trace::{Path, PathPoint, Point};

const DENOM: i64 = 64;

/// Parses a rational literal, panicking on bad input.
pub fn q(s: &str) -> Rat {
    parse_rat(s).unwrap_or_else(|| panic!("bad rational literal {s:?}"))
}

pub fn reparam(pts: &[(&str, &str)]) -> Reparam {
    Reparam::from_pairs(pts.iter().map(|(x, y)| (q(x), q(y)))).expect("valid reparametrization literal")
}

pub fn pt(xs: &[&str]) -> Point {
    xs.iter().map(|x| q(x)).collect()
}

pub fn path(dim: usize, pts: &[(&str, &[&str])]) -> Path {
    Path::from_pairs(dim, pts.iter().map(|(t, x)| (q(t), pt(x)))).expect("valid path literal")
}

fn grid(j: i64) -> Rat {
    Rat::new(j.into(), DENOM.into())
}

/// `n` sorted distinct interior grid points of `(0,1)`.
fn interior_times<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Rat> {
    let mut js: Vec<usize> = sample(rng, DENOM as usize - 1, n).into_vec();
    js.sort_unstable();
    js.into_iter().map(|j| grid(j as i64 + 1)).collect()
}

/// Random reparametrization with denominators dividing 64 and at most
/// `max_plateaus` stop intervals.
pub fn random_reparam<R: Rng + ?Sized>(rng: &mut R, max_plateaus: usize) -> Reparam {
    let interior = rng.gen_range(0..=5);
    let mut levels: Vec<Rat> = vec![grid(0)];
    levels.extend(interior_times(rng, interior));
    levels.push(grid(DENOM));
    let plateaus = rng.gen_range(0..=max_plateaus.min(levels.len()));
    let doubled: BTreeSet<usize> = sample(rng, levels.len(), plateaus).into_iter().collect();

    let mut ys: Vec<Rat> = Vec::new();
    for (i, y) in levels.into_iter().enumerate() {
        if doubled.contains(&i) {
            ys.push(y.clone());
        }
        ys.push(y);
    }
    let mut xs = vec![grid(0)];
    xs.extend(interior_times(rng, ys.len() - 2));
    xs.push(grid(DENOM));
    Reparam::new(xs.into_iter().zip(ys).map(|(x, y)| Breakpoint::new(x, y)).collect())
        .expect("generated breakpoints are valid")
}

pub fn random_homeo<R: Rng + ?Sized>(rng: &mut R) -> Homeo {
    Homeo::try_from(random_reparam(rng, 0)).expect("no plateaus")
}

/// Up to `max` stop values on the grid `j/64`, endpoints included.
pub fn random_value_set<R: Rng + ?Sized>(rng: &mut R, max: usize) -> BTreeSet<Rat> {
    let n = rng.gen_range(0..=max);
    (0..n).map(|_| grid(rng.gen_range(0..=DENOM))).collect()
}

fn assemble(dim: usize, vertices: Vec<Point>, rng: &mut (impl Rng + ?Sized)) -> Path {
    let mut ts = vec![grid(0)];
    ts.extend(interior_times(rng, vertices.len() - 2));
    ts.push(grid(DENOM));
    Path::new(
        dim,
        ts.into_iter()
            .zip(vertices)
            .map(|(t, p)| PathPoint::new(t, p))
            .collect(),
    )
    .expect("generated path is valid")
}

fn random_point<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Point {
    (0..dim)
        .map(|_| Rat::from_integer(rng.gen_range(-2..=2).into()))
        .collect()
}

/// Random path with at most `max_breakpoints` raw breakpoints on a small
/// integer lattice, so that crossings and reversals are common. With
/// `plateaus`, some vertices are held for a while, and a few paths are
/// constant.
pub fn random_path<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_breakpoints: usize, plateaus: bool) -> Path {
    if plateaus && rng.gen_ratio(1, 16) {
        return Path::constant(random_point(rng, dim));
    }
    let n = rng.gen_range(2..=max_breakpoints.max(2));
    let mut vertices: Vec<Point> = Vec::new();
    while vertices.len() < n {
        let p = random_point(rng, dim);
        if vertices.last() == Some(&p) {
            continue;
        }
        if plateaus && vertices.len() + 2 <= n && rng.gen_ratio(1, 3) {
            vertices.push(p.clone());
        }
        vertices.push(p);
    }
    assemble(dim, vertices, rng)
}

/// Random non-constant path without stop intervals.
pub fn random_regular_path<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_breakpoints: usize) -> Path {
    random_path(rng, dim, max_breakpoints, false)
}

/// Random path weakly increasing in every coordinate, possibly with stops.
pub fn random_directed_path<R: Rng + ?Sized>(rng: &mut R, dim: usize, max_breakpoints: usize) -> Path {
    let n = rng.gen_range(2..=max_breakpoints.max(2));
    let mut current: Point = random_point(rng, dim);
    let mut vertices = vec![current.clone()];
    while vertices.len() < n {
        current = current
            .iter()
            .map(|x| x + Rat::from_integer(rng.gen_range(0..=2).into()))
            .collect();
        vertices.push(current.clone());
    }
    assemble(dim, vertices, rng)
}

/// Named fixtures used throughout the test suites.
pub mod fixtures {
    use super::{path, reparam};
    use crate::plmap::Reparam;
    use crate::trace::Path;

    pub fn id() -> Reparam {
        Reparam::identity()
    }

    pub fn a() -> Reparam {
        reparam(&[("0", "0"), ("1/4", "1/2"), ("3/4", "1/2"), ("1", "1")])
    }

    pub fn b() -> Reparam {
        reparam(&[("0", "0"), ("1/2", "1/4"), ("3/4", "1/4"), ("1", "1")])
    }

    /// `a ∘ b`.
    pub fn ab() -> Reparam {
        reparam(&[("0", "0"), ("1/2", "1/2"), ("11/12", "1/2"), ("1", "1")])
    }

    /// The identity as a one-dimensional path.
    pub fn idpath() -> Path {
        path(1, &[("0", &["0"]), ("1", &["1"])])
    }

    /// `idpath ∘ a`.
    pub fn p1() -> Path {
        path(1, &[("0", &["0"]), ("1/4", &["1/2"]), ("3/4", &["1/2"]), ("1", &["1"])])
    }

    pub fn pz() -> Path {
        path(2, &[("0", &["0", "0"]), ("1/2", &["1", "0"]), ("1", &["1", "1"])])
    }

    pub fn pc() -> Path {
        path(2, &[("0", &["0", "0"]), ("1", &["0", "0"])])
    }
}
