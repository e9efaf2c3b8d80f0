//! Loop-freeness and images of loop-free paths.

use num_traits::{One, Zero};

use super::regular::{normal_form, regularize};
use super::{Path, Point};
use crate::error::{Error, Result};
use crate::rat::Rat;

fn sub(a: &Point, b: &Point) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn parallel(u: &[Rat], w: &[Rat]) -> bool {
    (0..u.len()).all(|i| (i + 1..u.len()).all(|j| &u[i] * &w[j] == &u[j] * &w[i]))
}

fn in_unit(x: &Rat) -> bool {
    *x >= Rat::zero() && *x <= Rat::one()
}

/// Whether the closed segments `[a,b]` and `[c,d]` share a point. Both are
/// assumed nondegenerate.
pub(crate) fn segments_meet(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let u = sub(b, a);
    let w = sub(d, c);
    let ca = sub(c, a);
    let n = u.len();
    for i in 0..n {
        for j in i + 1..n {
            let det = &u[j] * &w[i] - &u[i] * &w[j];
            if det.is_zero() {
                continue;
            }
            // a + s·u = c + r·w, solved on coordinates i and j
            let s = (&w[i] * &ca[j] - &w[j] * &ca[i]) / &det;
            let r = (&u[i] * &ca[j] - &u[j] * &ca[i]) / &det;
            return in_unit(&s) && in_unit(&r) && (0..n).all(|k| &a[k] + &s * &u[k] == &c[k] + &r * &w[k]);
        }
    }
    if !parallel(&ca, &u) {
        return false;
    }
    let k = u.iter().position(|x| !x.is_zero()).expect("nondegenerate segment");
    let sc = &ca[k] / &u[k];
    let sd = (&d[k] - &a[k]) / &u[k];
    let (lo, hi) = if sc <= sd { (sc, sd) } else { (sd, sc) };
    lo <= Rat::one() && hi >= Rat::zero()
}

/// Consecutive segments `[a,b]`, `[b,c]` overlap beyond `b` only when the
/// second doubles back along the first.
fn doubles_back(a: &Point, b: &Point, c: &Point) -> bool {
    let u = sub(b, a);
    let w = sub(c, b);
    parallel(&u, &w) && u.iter().zip(&w).any(|(x, y)| (x * y) < Rat::zero())
}

/// True iff the path never returns to a point it has left.
pub fn is_loop_free(p: &Path) -> bool {
    let (q, _) = regularize(p);
    if q.is_constant() {
        return true;
    }
    let v: Vec<&Point> = q.vertices().collect();
    let m = v.len() - 1;
    for i in 0..m {
        if i + 1 < m && doubles_back(v[i], v[i + 1], v[i + 2]) {
            return false;
        }
        for j in i + 2..m {
            if segments_meet(v[i], v[i + 1], v[j], v[j + 1]) {
                return false;
            }
        }
    }
    true
}

/// Image of a loop-free path: a point, or an arc given by its vertex chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ImageChain {
    Point(Point),
    Arc(Vec<Point>),
}

pub fn image_chain(p: &Path) -> Result<ImageChain> {
    if !is_loop_free(p) {
        return Err(Error::NotLoopFree);
    }
    let mut nf = normal_form(p).vertices;
    Ok(if nf.len() == 1 {
        ImageChain::Point(nf.remove(0))
    } else {
        ImageChain::Arc(nf)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{fixtures, path, pt, random_path, random_reparam};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn back_and_forth() -> Path {
        path(2, &[("0", &["0", "0"]), ("1/2", &["1", "0"]), ("1", &["0", "0"])])
    }

    #[test]
    fn loop_free_examples() {
        assert!(is_loop_free(&fixtures::pz()));
        assert!(!is_loop_free(&back_and_forth()));
        assert!(is_loop_free(&fixtures::pc()));
        assert!(is_loop_free(&fixtures::p1()));
    }

    #[test]
    fn crossings_are_found() {
        let square = path(
            2,
            &[
                ("0", &["0", "0"]),
                ("1/4", &["1", "0"]),
                ("1/2", &["1", "1"]),
                ("3/4", &["0", "1"]),
                ("1", &["0", "0"]),
            ],
        );
        assert!(!is_loop_free(&square));
        let cross = path(
            2,
            &[
                ("0", &["0", "0"]),
                ("1/3", &["2", "2"]),
                ("2/3", &["2", "0"]),
                ("1", &["0", "2"]),
            ],
        );
        assert!(!is_loop_free(&cross));
        let partial_back = path(1, &[("0", &["0"]), ("1/2", &["1"]), ("1", &["1/2"])]);
        assert!(!is_loop_free(&partial_back));
        let staircase = path(
            2,
            &[
                ("0", &["0", "0"]),
                ("1/3", &["1", "0"]),
                ("2/3", &["1", "1"]),
                ("1", &["2", "1"]),
            ],
        );
        assert!(is_loop_free(&staircase));
    }

    #[test]
    fn image_chain_examples() {
        assert_eq!(
            image_chain(&fixtures::pc()).unwrap(),
            ImageChain::Point(pt(&["0", "0"]))
        );
        assert_eq!(
            image_chain(&fixtures::pz()).unwrap(),
            ImageChain::Arc(vec![pt(&["0", "0"]), pt(&["1", "0"]), pt(&["1", "1"])])
        );
        assert_eq!(image_chain(&back_and_forth()), Err(Error::NotLoopFree));
    }

    #[test]
    fn segment_intersection_cases() {
        let (o, x, y, xy) = (pt(&["0", "0"]), pt(&["1", "0"]), pt(&["0", "1"]), pt(&["1", "1"]));
        assert!(segments_meet(&o, &xy, &x, &y));
        assert!(!segments_meet(&o, &x, &y, &xy));
        assert!(segments_meet(&o, &x, &x, &xy));
        assert!(segments_meet(&o, &pt(&["2", "0"]), &x, &pt(&["3", "0"])));
        assert!(!segments_meet(&o, &x, &pt(&["2", "0"]), &pt(&["3", "0"])));
    }

    proptest! {
        #[test]
        fn directed_regular_paths_with_progress_are_loop_free(seed in any::<u64>(), dim in 1usize..=3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_path(&mut rng, dim, 12, true);
            // directed paths never return to a point once they leave it
            if p.is_directed() {
                prop_assert!(is_loop_free(&p));
                if let ImageChain::Arc(chain) = image_chain(&p).unwrap() {
                    for w in chain.windows(2) {
                        prop_assert!(w[0].iter().zip(&w[1]).all(|(a, b)| a <= b));
                    }
                }
            }
        }

        #[test]
        fn loop_freeness_is_reparametrization_invariant(seed in any::<u64>(), dim in 1usize..=3) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let p = random_path(&mut rng, dim, 10, true);
            let f = random_reparam(&mut rng, 6);
            prop_assert_eq!(is_loop_free(&p.reparam(&f)), is_loop_free(&p));
        }
    }
}
