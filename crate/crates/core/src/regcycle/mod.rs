//! Deciding regular cycles: brute force, the fixed-point union criterion,
//! the k-set combinatorial rule, and certified witness constructions.

mod affine;
mod diagonal;
mod kset;
mod partition;
mod product;

pub use affine::{affine_witness, gl_regular_vector_set, SpanningSet};
pub use diagonal::{diagonal_fpr_audit, AuditRow, DiagonalAudit, DiagonalShape};
pub use kset::{kset_decide, kset_witness, ksets_theorem_scan, min_cover, KSetCase, KSetDecision, MinCover, ScanReport};
pub use partition::{laid_out, partition_layout, partition_witness, PartitionCase, PartitionWitness};
pub use product::{product_witness, wreath_fpr_max, WreathFprReport};

use std::fmt;

use num_integer::Integer;

use crate::actions::{Action, FixSet, DEFAULT_DOMAIN_CAP};
use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};
use crate::groups::GroupElement;
use crate::perm::{CycleType, Permutation};
use crate::Rational;

/// How a verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Bruteforce,
    FixUnion,
    KsetCombinatorial,
    ConstructiveProof,
    FprSumSufficient,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Bruteforce => "bruteforce",
            Method::FixUnion => "fix_union",
            Method::KsetCombinatorial => "kset_combinatorial",
            Method::ConstructiveProof => "constructive_proof",
            Method::FprSumSufficient => "fpr_sum_sufficient",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of a regular-cycle decision for one element in one action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub element: String,
    pub action: String,
    /// `|g|` in the abstract group.
    pub order: u64,
    /// Order of the permutation `g` induces on the domain.
    pub induced_order: u64,
    pub has_regular_cycle: bool,
    pub witness: Option<String>,
    pub witness_index: Option<u64>,
    pub method: Method,
    pub certified: bool,
    pub flags: Vec<String>,
    /// Orbit lengths of `<g>`, when the whole domain was scanned.
    pub induced_cycle_type: Option<CycleType>,
}

fn base_flags<A: Action>(a: &A, order: u64, induced: u64) -> Vec<String> {
    let mut flags = a.flags();
    if induced < order {
        flags.push("unfaithful".into());
    }
    flags
}

fn check_cap(n: u64, cap: u64) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "domain size",
            cap,
            reached: n,
        });
    }
    Ok(())
}

/// The `<g>`-orbit of `x`, starting at `x`.
pub fn element_orbit<A: Action>(a: &A, g: &A::Elem, x: &A::Point) -> Result<Vec<A::Point>> {
    a.check_element(g)?;
    a.check_point(x)?;
    let bound = a.element_order(g);
    let mut orbit = vec![x.clone()];
    let mut y = a.image(g, x);
    while &y != x {
        if orbit.len() as u64 >= bound {
            return Err(Error::Certification(format!(
                "orbit of {} exceeds the element order {bound}",
                a.render_point(x)
            )));
        }
        orbit.push(y.clone());
        y = a.image(g, &y);
    }
    Ok(orbit)
}

/// Length of the `<g>`-orbit of `x`.
pub fn orbit_length<A: Action>(a: &A, g: &A::Elem, x: &A::Point) -> Result<u64> {
    element_orbit(a, g, x).map(|o| o.len() as u64)
}

/// Checks that `x` lies on a cycle of length `|g|`.
pub fn certify<A: Action>(a: &A, g: &A::Elem, x: &A::Point) -> Result<()> {
    let order = a.element_order(g);
    let len = orbit_length(a, g, x)?;
    if len != order {
        return Err(Error::Certification(format!(
            "witness {} has orbit length {len}, not {order}",
            a.render_point(x)
        )));
    }
    Ok(())
}

/// Every orbit length of `<g>` on the domain, ascending.
pub fn orbit_lengths<A: Action>(a: &A, g: &A::Elem, cap: u64) -> Result<Vec<u64>> {
    let images = a.induced_images(g, cap)?;
    let mut lens: Vec<u64> = Permutation::from_images(images)?
        .cycles_with_fixed()
        .iter()
        .map(|c| c.len() as u64)
        .collect();
    lens.sort_unstable();
    Ok(lens)
}

/// Order of the permutation induced on the domain.
pub fn induced_order<A: Action>(a: &A, g: &A::Elem, cap: u64) -> Result<u64> {
    Ok(orbit_lengths(a, g, cap)?.into_iter().fold(1, |acc, l| acc.lcm(&l)))
}

/// `Fix(g)` as a bitset over domain indices.
pub fn fix_set<A: Action>(a: &A, g: &A::Elem, cap: u64) -> Result<FixSet> {
    a.check_element(g)?;
    let n = a.domain_size();
    check_cap(n, cap)?;
    Ok(FixSet::from_predicate(n, |i| a.image_index(g, i) == i))
}

/// `|Fix(g)| / |Ω|`, exactly.
pub fn fpr<A: Action>(a: &A, g: &A::Elem, cap: u64) -> Result<Rational> {
    let f = fix_set(a, g, cap)?;
    Ok(Rational::new(f.count(), a.domain_size()))
}

pub fn fix_and_fpr<A: Action>(a: &A, g: &A::Elem, cap: u64) -> Result<(FixSet, Rational)> {
    let f = fix_set(a, g, cap)?;
    let r = Rational::new(f.count(), a.domain_size());
    Ok((f, r))
}

/// Scans every orbit; the witness is the first domain point on a regular cycle.
pub fn decide_bruteforce<A: Action>(a: &A, g: &A::Elem, cap: u64) -> Result<Verdict> {
    a.check_element(g)?;
    check_cap(a.domain_size(), cap)?;
    let order = a.element_order(g);
    let images = a.induced_images(g, cap)?;
    let n = images.len();
    let mut seen = vec![false; n];
    let mut lengths = Vec::new();
    let mut witness = None;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = images[x] as usize;
            len += 1;
        }
        if len == order && witness.is_none() {
            witness = Some(start as u64);
        }
        lengths.push(len);
    }
    let induced = lengths.iter().fold(1u64, |acc, l| acc.lcm(l));
    let ct = CycleType::from_parts(lengths)?;
    let mut certified = true;
    let rendered = match witness {
        Some(i) => {
            let x = a.unrank(i);
            certified = certify(a, g, &x).is_ok();
            Some(a.render_point(&x))
        }
        None => None,
    };
    Ok(Verdict {
        element: g.to_string(),
        action: a.describe(),
        order,
        induced_order: induced,
        has_regular_cycle: witness.is_some(),
        witness: rendered,
        witness_index: witness,
        method: Method::Bruteforce,
        certified,
        flags: base_flags(a, order, induced),
        induced_cycle_type: Some(ct),
    })
}

/// `g^{|g|/p}` for each prime `p` dividing `|g|`.
pub fn prime_quotient_powers<E: GroupElement>(g: &E, order: u64) -> Result<Vec<(u64, E)>> {
    Ok(factorize(order)?
        .primes()
        .map(|p| (p, g.pow(order / p)))
        .collect())
}

/// Order of the induced permutation using only kernel tests on powers of `g`.
fn induced_order_by_kernel<A: Action>(a: &A, g: &A::Elem, order: u64) -> Result<u64> {
    let n = a.domain_size();
    let trivial = |h: &A::Elem| FixSet::from_predicate(n, |i| a.image_index(h, i) == i).count() == n;
    let mut induced = 1u64;
    for &(p, e) in &factorize(order)?.factors {
        let part = p.pow(e);
        // smallest f with g^{(|g|/p^e) p^f} acting trivially
        let base = g.pow(order / part);
        let mut f = 0;
        let mut h = base;
        while !trivial(&h) {
            h = h.pow(p);
            f += 1;
        }
        induced *= p.pow(f);
    }
    Ok(induced)
}

/// Decides through the union of `Fix(g^{|g|/p})` over the primes `p | |g|`:
/// `g` has a regular cycle iff that union misses a point.
pub fn decide_fix_union<A: Action>(a: &A, g: &A::Elem, cap: u64) -> Result<Verdict> {
    a.check_element(g)?;
    let n = a.domain_size();
    check_cap(n, cap)?;
    let order = a.element_order(g);
    let mut union = FixSet::empty(n);
    for (_, h) in prime_quotient_powers(g, order)? {
        union.union_with(&FixSet::from_predicate(n, |i| a.image_index(&h, i) == i));
    }
    let witness = union.first_missing();
    let induced = induced_order_by_kernel(a, g, order)?;
    let mut certified = true;
    let rendered = match witness {
        Some(i) => {
            let x = a.unrank(i);
            certified = certify(a, g, &x).is_ok();
            Some(a.render_point(&x))
        }
        None => None,
    };
    Ok(Verdict {
        element: g.to_string(),
        action: a.describe(),
        order,
        induced_order: induced,
        has_regular_cycle: witness.is_some(),
        witness: rendered,
        witness_index: witness,
        method: Method::FixUnion,
        certified,
        flags: base_flags(a, order, induced),
        induced_cycle_type: None,
    })
}

/// The exact sum `Σ_p fpr(g^{|g|/p})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FprSum {
    pub terms: Vec<(u64, Rational)>,
    pub sum: Rational,
}

impl FprSum {
    /// A sum below 1 guarantees a regular cycle; otherwise nothing follows.
    pub fn certifies(&self) -> bool {
        self.sum < Rational::from_integer(1)
    }
}

pub fn fpr_sum_sufficient<A: Action>(a: &A, g: &A::Elem, cap: u64) -> Result<FprSum> {
    a.check_element(g)?;
    let order = a.element_order(g);
    let mut terms = Vec::new();
    for (p, h) in prime_quotient_powers(g, order)? {
        terms.push((p, fpr(a, &h, cap)?));
    }
    let sum = terms.iter().map(|t| t.1).sum();
    Ok(FprSum { terms, sum })
}

/// Given `w` on a `g^p`-orbit of length `|g|/p` with `p^2 | |g|`, checks
/// that the `g`-orbit of `w` has length `|g|` and returns `w`.
pub fn lift_witness<A: Action>(a: &A, g: &A::Elem, p: u64, w: &A::Point) -> Result<A::Point> {
    a.check_element(g)?;
    let order = a.element_order(g);
    if !is_prime(p) || order % (p * p) != 0 {
        return Err(Error::Precondition(format!("{p}^2 does not divide |g| = {order} (or {p} is not prime)")));
    }
    let gp = g.pow(p);
    let len_p = orbit_length(a, &gp, w)?;
    if len_p != order / p {
        return Err(Error::Precondition(format!(
            "orbit under g^{p} has length {len_p}, expected {}",
            order / p
        )));
    }
    certify(a, g, w)?;
    Ok(w.clone())
}

/// Regular-cycle count against total cycle count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleStats {
    pub regular: u64,
    pub total: u64,
    pub ratio: Rational,
}

pub fn cycle_ratio_stats<A: Action>(a: &A, g: &A::Elem, cap: u64) -> Result<CycleStats> {
    let order = a.element_order(g);
    let lens = orbit_lengths(a, g, cap)?;
    let regular = lens.iter().filter(|&&l| l == order).count() as u64;
    let total = lens.len() as u64;
    Ok(CycleStats {
        regular,
        total,
        ratio: Rational::new(regular, total),
    })
}

/// Default domain cap for callers without a configuration.
pub const DEFAULT_CAP: u64 = DEFAULT_DOMAIN_CAP;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::{KSetAction, NaturalAction, PartitionAction, VectorAction};
    use crate::gf::{Field, Matrix};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse(text, n).unwrap()
    }

    #[test]
    fn bruteforce_examples() {
        let v = decide_bruteforce(&NaturalAction::new(7), &p("(1 2 3)(4 5)(6 7)", 7), DEFAULT_CAP).unwrap();
        assert_eq!(v.order, 6);
        assert!(!v.has_regular_cycle);
        let ks = KSetAction::new(10, 2).unwrap();
        let g = p("(1 2)(3 4 5)(6 7 8 9 10)", 10);
        let v = decide_bruteforce(&ks, &g, DEFAULT_CAP).unwrap();
        assert!(!v.has_regular_cycle);
        assert_eq!(v.order, 30);
        assert_eq!(v.induced_order, 30);
        assert_eq!(orbit_lengths(&ks, &g, DEFAULT_CAP).unwrap(), vec![1, 3, 5, 5, 6, 10, 15]);
        let v = decide_bruteforce(&NaturalAction::new(4), &p("(1 2 3 4)", 4), DEFAULT_CAP).unwrap();
        assert!(v.has_regular_cycle && v.certified);
        assert_eq!(v.witness.as_deref(), Some("1"));
    }

    #[test]
    fn orbit_examples() {
        let nat = NaturalAction::new(5);
        assert_eq!(orbit_length(&nat, &p("(1 2 3)(4 5)", 5), &0).unwrap(), 3);
        let pa = PartitionAction::new(2, 2).unwrap();
        let g = p("(1 2 3 4)", 4);
        assert_eq!(orbit_lengths(&pa, &g, DEFAULT_CAP).unwrap(), vec![1, 2]);
        assert_eq!(induced_order(&pa, &g, DEFAULT_CAP).unwrap(), 2);
        let v = decide_bruteforce(&pa, &g, DEFAULT_CAP).unwrap();
        assert!(!v.has_regular_cycle);
        assert!(v.flags.contains(&"unfaithful".to_string()));
        let fu = decide_fix_union(&pa, &g, DEFAULT_CAP).unwrap();
        assert_eq!(fu.induced_order, 2);
        assert!(!fu.has_regular_cycle);
    }

    #[test]
    fn fix_union_examples() {
        let v = decide_fix_union(&NaturalAction::new(5), &p("(1 2 3)(4 5)", 5), DEFAULT_CAP).unwrap();
        assert!(!v.has_regular_cycle);
        let v = decide_fix_union(&NaturalAction::new(6), &p("(1 2 3)(4 5)", 6), DEFAULT_CAP).unwrap();
        assert!(!v.has_regular_cycle);
        let v = decide_fix_union(&NaturalAction::new(7), &p("(1 2 3 4 5 6)", 7), DEFAULT_CAP).unwrap();
        assert!(v.has_regular_cycle && v.certified);
        assert_eq!(v.witness.as_deref(), Some("1"));
    }

    #[test]
    fn fpr_examples() {
        let nat = NaturalAction::new(5);
        assert_eq!(fpr(&nat, &Permutation::identity(5), DEFAULT_CAP).unwrap(), Rational::from_integer(1));
        assert_eq!(fpr(&nat, &p("(1 2)", 5), DEFAULT_CAP).unwrap(), Rational::new(3, 5));
        let s = fpr_sum_sufficient(&nat, &p("(1 2 3)(4 5)", 5), DEFAULT_CAP).unwrap();
        assert_eq!(s.sum, Rational::from_integer(1));
        assert!(!s.certifies());
        let s = fpr_sum_sufficient(&nat, &p("(1 2 3)", 5), DEFAULT_CAP).unwrap();
        assert!(s.certifies());
    }

    #[test]
    fn lift_examples() {
        let nat = NaturalAction::new(4);
        assert_eq!(lift_witness(&nat, &p("(1 2 3 4)", 4), 2, &0).unwrap(), 0);
        let nine = NaturalAction::new(9);
        assert_eq!(lift_witness(&nine, &p("(1 2 3 4 5 6 7 8 9)", 9), 3, &0).unwrap(), 0);
        let f3 = Field::get(3).unwrap();
        let va = VectorAction::new(3, 2).unwrap();
        let g = Matrix::scalar(f3, 2, 2);
        assert!(matches!(lift_witness(&va, &g, 2, &vec![1, 0]), Err(Error::Precondition(_))));
    }

    #[test]
    fn cycle_stats_examples() {
        let s = cycle_ratio_stats(&NaturalAction::new(4), &p("(1 2 3 4)", 4), DEFAULT_CAP).unwrap();
        assert_eq!((s.regular, s.total), (1, 1));
        let ks = KSetAction::new(10, 2).unwrap();
        let s = cycle_ratio_stats(&ks, &p("(1 2)(3 4 5)(6 7 8 9 10)", 10), DEFAULT_CAP).unwrap();
        assert_eq!((s.regular, s.total), (0, 7));
        let s = cycle_ratio_stats(&NaturalAction::new(6), &p("(1 2 3)(4 5)", 6), DEFAULT_CAP).unwrap();
        assert_eq!((s.regular, s.total), (0, 3));
    }

    #[test]
    fn cap_is_enforced() {
        let ks = KSetAction::new(30, 10).unwrap();
        let g = Permutation::identity(30);
        assert!(matches!(decide_bruteforce(&ks, &g, 1000), Err(Error::CapExceeded { .. })));
        assert!(matches!(decide_fix_union(&ks, &g, 1000), Err(Error::CapExceeded { .. })));
    }

    fn random_perm(rng: &mut ChaCha8Rng, n: usize) -> Permutation {
        let mut v: Vec<u32> = (0..n as u32).collect();
        for i in (1..n).rev() {
            v.swap(i, rng.gen_range(0..=i));
        }
        Permutation::from_images(v).unwrap()
    }

    proptest! {
        #[test]
        fn lift_property(seed in any::<u64>(), n in 4usize..12) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_perm(&mut rng, n);
            let nat = NaturalAction::new(n);
            let order = g.order();
            for q in factorize(order).unwrap().primes() {
                if order % (q * q) != 0 {
                    continue;
                }
                let gq = g.pow(q);
                for w in 0..n as u32 {
                    if orbit_length(&nat, &gq, &w).unwrap() == order / q {
                        prop_assert_eq!(orbit_length(&nat, &g, &w).unwrap(), order);
                    }
                }
            }
        }

        #[test]
        fn fpr_sum_is_sound(seed in any::<u64>(), n in 3usize..9, k in 1usize..4) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_perm(&mut rng, n);
            let ks = KSetAction::new(n, k.min(n - 1)).unwrap();
            let bf = decide_bruteforce(&ks, &g, DEFAULT_CAP).unwrap();
            if fpr_sum_sufficient(&ks, &g, DEFAULT_CAP).unwrap().certifies() {
                prop_assert!(bf.has_regular_cycle);
            }
        }

        #[test]
        fn conjugation_invariance(seed in any::<u64>(), n in 4usize..9) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_perm(&mut rng, n);
            let x = random_perm(&mut rng, n);
            for k in 1..=n / 2 {
                let ks = KSetAction::new(n, k).unwrap();
                let a = decide_bruteforce(&ks, &g, DEFAULT_CAP).unwrap();
                let b = decide_bruteforce(&ks, &g.conjugate_by(&x), DEFAULT_CAP).unwrap();
                prop_assert_eq!(a.has_regular_cycle, b.has_regular_cycle);
                prop_assert_eq!(a.induced_cycle_type, b.induced_cycle_type);
            }
        }
    }
}
