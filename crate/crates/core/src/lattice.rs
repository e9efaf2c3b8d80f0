//! Reparametrizations up to right composition with homeomorphisms.
//!
//! A class is determined by its set of stop values, and the order "`g`
//! factors as `f ∘ h`" becomes set inclusion. Join and meet are union and
//! intersection of stop-value sets; [`join_witness`] and [`meet_witness`]
//! produce the reparametrizations that realize them by composition.

use std::collections::BTreeSet;

use num_traits::{One, Zero};

use crate::error::Result;
use crate::factorization::{left_factor, right_lift};
use crate::plmap::{Breakpoint, Homeo, Reparam};
use crate::rat::Rat;
use crate::stopmap::{realize_values, Stop, StopData};

/// A class of reparametrizations modulo homeomorphisms, keyed by its
/// stop-value set, with `realize_values` of that set as representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TraceClass {
    values: BTreeSet<Rat>,
    representative: Reparam,
}

impl TraceClass {
    pub fn from_values(values: BTreeSet<Rat>) -> Result<Self> {
        let representative = realize_values(&values)?;
        Ok(TraceClass { values, representative })
    }

    /// The class of homeomorphisms, the least element.
    pub fn bottom() -> Self {
        TraceClass {
            values: BTreeSet::new(),
            representative: Reparam::identity(),
        }
    }

    pub fn values(&self) -> &BTreeSet<Rat> {
        &self.values
    }

    pub fn representative(&self) -> &Reparam {
        &self.representative
    }

    pub fn leq(&self, other: &TraceClass) -> bool {
        self.values.is_subset(&other.values)
    }

    pub fn join(&self, other: &TraceClass) -> TraceClass {
        TraceClass::known_valid(self.values.union(&other.values).cloned().collect())
    }

    pub fn meet(&self, other: &TraceClass) -> TraceClass {
        TraceClass::known_valid(self.values.intersection(&other.values).cloned().collect())
    }

    fn known_valid(values: BTreeSet<Rat>) -> TraceClass {
        TraceClass::from_values(values).expect("stop values of a class lie in [0,1]")
    }
}

pub fn class_of(f: &Reparam) -> TraceClass {
    TraceClass::known_valid(f.stop_values())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinWitness {
    pub psi1: Reparam,
    pub psi2: Reparam,
}

/// Finds `psi1`, `psi2` with `f1 ∘ psi1 = f2 ∘ psi2` whose stop values are
/// `C_f1 ∪ C_f2`.
///
/// `psi1` places plateaus at the `f1`-preimages of the stop values that only
/// `f2` has; these preimages are single points because the values are not
/// stop values of `f1`. `psi2` is then the minimal right lift over `f2`.
pub fn join_witness(f1: &Reparam, f2: &Reparam) -> JoinWitness {
    let c1 = f1.stop_values();
    let preimages: BTreeSet<Rat> = f2
        .stop_values()
        .difference(&c1)
        .map(|v| f1.preimage_unchecked(v).0)
        .collect();
    let psi1 = realize_values(&preimages).expect("preimages lie in [0,1]");
    let psi2 = right_lift(&f1.compose(&psi1), f2, None).expect("the composite carries every stop value of f2");
    JoinWitness { psi1, psi2 }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetWitness {
    pub rho: Homeo,
    pub phi: Reparam,
    pub psi1: Reparam,
    pub psi2: Reparam,
}

/// Finds a common right factor `phi` with stop values `C_f1 ∩ C_f2`, together
/// with `psi1 ∘ phi = f1` and `psi2 ∘ phi = f2 ∘ rho`.
///
/// `phi` keeps the stop intervals of `f1` whose values are shared and is
/// linear elsewhere. `rho` is the homeomorphism that maps each such interval
/// linearly onto the stop interval of `f2` with the same value and
/// interpolates linearly in between; it is needed because the shared stop
/// intervals of `f2` generally sit elsewhere.
pub fn meet_witness(f1: &Reparam, f2: &Reparam) -> MeetWitness {
    let s1 = f1.stop_data();
    let s2 = f2.stop_data();
    let shared = s2.values();
    let kept: Vec<Stop> = s1
        .stops()
        .iter()
        .filter(|s| shared.contains(&s.value))
        .cloned()
        .collect();
    let common = StopData::new(kept).expect("a subset of valid stop data is valid");
    let phi = common.realize();

    let mut pts = vec![Breakpoint::new(Rat::zero(), Rat::zero())];
    for s in common.stops() {
        let target = &s2.stop_with_value(&s.value).expect("value is shared with f2").interval;
        pts.push(Breakpoint::new(s.interval.lo().clone(), target.lo().clone()));
        pts.push(Breakpoint::new(s.interval.hi().clone(), target.hi().clone()));
    }
    pts.push(Breakpoint::new(Rat::one(), Rat::one()));
    let rho = Homeo::try_from(Reparam::from_trusted(pts)).expect("ordered interval matching is strictly increasing");

    let psi1 = left_factor(f1, &phi).expect("phi keeps a subset of the stop intervals of f1");
    let psi2 =
        left_factor(&f2.compose(&rho), &phi).expect("rho carries each stop interval of phi into a stop interval of f2");
    MeetWitness { rho, phi, psi1, psi2 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{fixtures, q, random_reparam, random_value_set, reparam};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn set(vs: &[&str]) -> BTreeSet<Rat> {
        vs.iter().map(|v| q(v)).collect()
    }

    fn arb_reparam() -> impl Strategy<Value = Reparam> {
        any::<u64>().prop_map(|seed| random_reparam(&mut ChaCha8Rng::seed_from_u64(seed), 6))
    }

    fn arb_class() -> impl Strategy<Value = TraceClass> {
        any::<u64>().prop_map(|seed| {
            TraceClass::from_values(random_value_set(&mut ChaCha8Rng::seed_from_u64(seed), 5)).unwrap()
        })
    }

    #[test]
    fn class_of_examples() {
        assert_eq!(class_of(&fixtures::id()), TraceClass::bottom());
        let ca = class_of(&fixtures::a());
        assert_eq!(ca.values(), &set(&["1/2"]));
        assert_eq!(ca.representative(), &realize_values(&set(&["1/2"])).unwrap());
        assert_eq!(class_of(&fixtures::ab()), ca);
    }

    #[test]
    fn order_examples() {
        let (id, a, b, ab) = (
            class_of(&fixtures::id()),
            class_of(&fixtures::a()),
            class_of(&fixtures::b()),
            class_of(&fixtures::ab()),
        );
        assert!(id.leq(&a));
        assert!(!a.leq(&b));
        assert!(a.leq(&ab));
        assert_eq!(a.join(&b).values(), &set(&["1/4", "1/2"]));
        assert_eq!(a.meet(&b), TraceClass::bottom());
        assert_eq!(a.join(&id), a);
    }

    #[test]
    fn join_witness_examples() {
        let (id, a, b) = (fixtures::id(), fixtures::a(), fixtures::b());
        let w = join_witness(&a, &id);
        assert_eq!(w.psi1, id);
        assert_eq!(w.psi2, a);

        let w = join_witness(&a, &b);
        assert_eq!(
            w.psi1,
            reparam(&[("0", "0"), ("1/3", "1/8"), ("2/3", "1/8"), ("1", "1")])
        );
        assert_eq!(a.compose(&w.psi1), b.compose(&w.psi2));
        assert_eq!(a.compose(&w.psi1).stop_values(), set(&["1/4", "1/2"]));

        let w = join_witness(&a, &a);
        assert!(w.psi1.is_homeo() && w.psi2.is_homeo());
        assert_eq!(a.compose(&w.psi1), a.compose(&w.psi2));
    }

    #[test]
    fn meet_witness_examples() {
        let (id, a, b) = (fixtures::id(), fixtures::a(), fixtures::b());
        let w = meet_witness(&a, &b);
        assert_eq!((w.rho.as_reparam(), &w.phi, &w.psi1, &w.psi2), (&id, &id, &a, &b));

        let w = meet_witness(&a, &a);
        assert_eq!(class_of(&w.phi), class_of(&a));
        assert!(w.psi1.is_homeo() && w.psi2.is_homeo());

        let w = meet_witness(&a, &id);
        assert_eq!((w.rho.as_reparam(), &w.phi, &w.psi1, &w.psi2), (&id, &id, &a, &id));
    }

    /// Two maps whose stop sets cover the whole interval admit no common
    /// left composite: any `g1 ∘ f1 = g2 ∘ f2` would be constant on
    /// `D_f1 ∪ D_f2 = [0,1]`, which no reparametrization is.
    #[test]
    fn dual_square_can_fail_to_close() {
        let f1 = reparam(&[("0", "0"), ("1/2", "0"), ("1", "1")]);
        let f2 = reparam(&[("0", "0"), ("1/2", "1"), ("1", "1")]);
        let d1 = f1.stop_data();
        let d2 = f2.stop_data();
        for k in 0..=16 {
            let t = Rat::new(k.into(), 16.into());
            assert!(d1.in_stop_set(&t) || d2.in_stop_set(&t));
        }
        let covered: Vec<_> = d1.intervals().chain(d2.intervals()).cloned().collect();
        assert_eq!(covered.len(), 2);
        // every stop interval of a composite g∘f contains one of f
        for g in [reparam(&[("0", "0"), ("1/2", "1/4"), ("1", "1")]), fixtures::id()] {
            let s = g.compose(&f1).stop_data();
            assert!(d1.intervals().all(|j| s.intervals().any(|k| k.contains_interval(j))));
        }
    }

    proptest! {
        #[test]
        fn lattice_laws(a in arb_class(), b in arb_class(), c in arb_class()) {
            prop_assert_eq!(a.join(&b), b.join(&a));
            prop_assert_eq!(a.meet(&b), b.meet(&a));
            prop_assert_eq!(a.join(&b.join(&c)), a.join(&b).join(&c));
            prop_assert_eq!(a.meet(&b.meet(&c)), a.meet(&b).meet(&c));
            prop_assert_eq!(a.join(&a), a.clone());
            prop_assert_eq!(a.meet(&a), a.clone());
            prop_assert_eq!(a.join(&a.meet(&b)), a.clone());
            prop_assert_eq!(a.meet(&a.join(&b)), a.clone());
            prop_assert_eq!(a.meet(&b.join(&c)), a.meet(&b).join(&a.meet(&c)));
            prop_assert_eq!(a.join(&b.meet(&c)), a.join(&b).meet(&a.join(&c)));
            prop_assert!(TraceClass::bottom().leq(&a));
            let joined: BTreeSet<Rat> = a.values().union(b.values()).cloned().collect();
            prop_assert_eq!(a.join(&b).values().clone(), joined);
            let met: BTreeSet<Rat> = a.values().intersection(b.values()).cloned().collect();
            prop_assert_eq!(a.meet(&b).values().clone(), met);
            prop_assert_eq!(a.leq(&b), a.join(&b) == b);
            prop_assert_eq!(a.leq(&b), a.meet(&b) == a);
        }

        #[test]
        fn representative_keys_the_class(a in arb_class()) {
            prop_assert_eq!(a.representative().stop_values(), a.values().clone());
            prop_assert_eq!(class_of(a.representative()), a);
        }

        #[test]
        fn witnesses_are_sound(f1 in arb_reparam(), f2 in arb_reparam()) {
            let union: BTreeSet<Rat> = f1.stop_values().union(&f2.stop_values()).cloned().collect();
            let jw = join_witness(&f1, &f2);
            let composite = f1.compose(&jw.psi1);
            prop_assert_eq!(&composite, &f2.compose(&jw.psi2));
            prop_assert_eq!(composite.stop_values(), union);

            let inter: BTreeSet<Rat> = f1.stop_values().intersection(&f2.stop_values()).cloned().collect();
            let mw = meet_witness(&f1, &f2);
            prop_assert_eq!(mw.psi1.compose(&mw.phi), f1.clone());
            prop_assert_eq!(mw.psi2.compose(&mw.phi), f2.compose(&mw.rho));
            prop_assert_eq!(mw.phi.stop_values(), inter);
        }
    }
}
