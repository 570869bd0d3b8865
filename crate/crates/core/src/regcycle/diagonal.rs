use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::actions::{DiagonalAction, DiagonalElement};
use crate::arith::{factorize, is_prime};
use crate::error::{Error, Result};
use crate::perm::{all_permutations, Permutation};
use crate::Rational;

/// How the coordinate permutation of `σφm` meets coordinate 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DiagonalShape {
    SigmaTrivial,
    SigmaFixesZero,
    SigmaMovesZero,
}

impl DiagonalShape {
    pub fn of(sigma: &Permutation) -> Self {
        if sigma.is_identity() {
            DiagonalShape::SigmaTrivial
        } else if sigma.image(0) == 0 {
            DiagonalShape::SigmaFixesZero
        } else {
            DiagonalShape::SigmaMovesZero
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DiagonalShape::SigmaTrivial => "sigma-trivial",
            DiagonalShape::SigmaFixesZero => "sigma-fixes-0",
            DiagonalShape::SigmaMovesZero => "sigma-moves-0",
        }
    }

    /// Upper bound on the fixed-point ratio of a prime-order element.
    pub fn bound(self, p: u64, t_order: u64, m_t: u64, ell: usize) -> Rational {
        match self {
            DiagonalShape::SigmaTrivial => Rational::new(1, m_t.pow(ell as u32)),
            DiagonalShape::SigmaFixesZero => Rational::new(1, t_order.pow(p as u32 - 1)),
            DiagonalShape::SigmaMovesZero if p == 2 => Rational::new(4, 15),
            DiagonalShape::SigmaMovesZero => Rational::new(1, t_order.pow(p as u32 - 2)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuditRow {
    pub shape: DiagonalShape,
    pub prime: u64,
    pub count: u64,
    pub max_fpr: Rational,
    pub bound: Rational,
}

impl AuditRow {
    pub fn holds(&self) -> bool {
        self.max_fpr <= self.bound
    }
}

/// Fixed-point ratio maxima of prime-order elements of `W`, by shape.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalAudit {
    pub ell: usize,
    pub elements: u64,
    /// Elements (of any order) checked for a regular cycle, and how many had one.
    pub regular_checked: u64,
    pub regular_found: u64,
    pub rows: Vec<AuditRow>,
}

impl DiagonalAudit {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(AuditRow::holds)
    }

    pub fn row(&self, shape: DiagonalShape, prime: u64) -> Option<&AuditRow> {
        self.rows.iter().find(|r| r.shape == shape && r.prime == prime)
    }
}

#[derive(Default)]
struct Collector {
    elements: u64,
    regular_checked: u64,
    regular_found: u64,
    rows: BTreeMap<(DiagonalShape, u64), (u64, Rational)>,
}

impl Collector {
    fn fixed_ratio(g: &Permutation) -> Rational {
        let n = g.degree() as u64;
        let fixed = (0..n as u32).filter(|&x| g.image(x) == x).count() as u64;
        Rational::new(fixed, n)
    }

    fn record(&mut self, shape: DiagonalShape, p: u64, g: &Permutation) {
        let r = Self::fixed_ratio(g);
        let e = self.rows.entry((shape, p)).or_insert((0, Rational::from_integer(0)));
        e.0 += 1;
        e.1 = e.1.max(r);
    }

    fn regular(&mut self, g: &Permutation, order: u64) {
        self.regular_checked += 1;
        if g.cycles_with_fixed().iter().any(|c| c.len() as u64 == order) {
            self.regular_found += 1;
        }
    }

    fn finish(self, action: &DiagonalAction, m_t: u64) -> DiagonalAudit {
        let t = action.t_order() as u64;
        DiagonalAudit {
            ell: action.ell,
            elements: self.elements,
            regular_checked: self.regular_checked,
            regular_found: self.regular_found,
            rows: self
                .rows
                .into_iter()
                .map(|((shape, prime), (count, max_fpr))| AuditRow {
                    shape,
                    prime,
                    count,
                    max_fpr,
                    bound: shape.bound(prime, t, m_t, action.ell),
                })
                .collect(),
        }
    }
}

/// Every element `σφm` of `W` (with `t_0 = 1`) when `sample` is `None`;
/// otherwise `count` seeded random elements together with their
/// prime-order powers `x^{|x|/p}`.
pub fn diagonal_fpr_audit(action: &DiagonalAction, m_t: u64, sample: Option<(u64, usize)>) -> Result<DiagonalAudit> {
    if m_t < 2 {
        return Err(Error::MissingEntry("m(T) must be at least 2".into()));
    }
    let t_elems = action.amb.target.elements();
    let reps = &action.amb.representatives;
    let sigmas = all_permutations(action.ell + 1);
    let ell = action.ell;
    let mut col = Collector::default();
    match sample {
        None => {
            let total = (t_elems.len() as u64).pow(ell as u32);
            for sigma in &sigmas {
                let shape = DiagonalShape::of(sigma);
                for phi in reps {
                    for code in 0..total {
                        let x = triple(sigma, phi, code, t_elems, ell);
                        let g = action.realize(&x)?;
                        let order = g.order();
                        col.elements += 1;
                        col.regular(&g, order);
                        if is_prime(order) {
                            col.record(shape, order, &g);
                        }
                    }
                }
            }
        }
        Some((seed, count)) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let total = (t_elems.len() as u64).pow(ell as u32);
            for _ in 0..count {
                let sigma = &sigmas[rng.gen_range(0..sigmas.len())];
                let phi = &reps[rng.gen_range(0..reps.len())];
                let x = triple(sigma, phi, rng.gen_range(0..total), t_elems, ell);
                let g = action.realize(&x)?;
                let order = g.order();
                col.elements += 1;
                col.regular(&g, order);
                for p in factorize(order)?.primes() {
                    let e = order / p;
                    col.record(DiagonalShape::of(&sigma.pow(e)), p, &g.pow(e));
                }
            }
        }
    }
    Ok(col.finish(action, m_t))
}

fn triple(sigma: &Permutation, phi: &Permutation, mut code: u64, t_elems: &[Permutation], ell: usize) -> DiagonalElement {
    let n = t_elems.len() as u64;
    let mut t = vec![t_elems[0].clone()];
    let mut rest = Vec::with_capacity(ell);
    for _ in 0..ell {
        rest.push(t_elems[(code % n) as usize].clone());
        code /= n;
    }
    rest.reverse();
    t.extend(rest);
    DiagonalElement {
        sigma: sigma.clone(),
        phi: phi.clone(),
        t,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{alternating, symmetric, AmbientAutomorphisms};

    fn alt5(ell: usize) -> DiagonalAction {
        let amb = AmbientAutomorphisms::new(alternating(5).unwrap(), symmetric(5).unwrap()).unwrap();
        DiagonalAction::new(amb, ell).unwrap()
    }

    #[test]
    fn alt5_ell1_exhaustive() {
        let a = alt5(1);
        let audit = diagonal_fpr_audit(&a, 5, None).unwrap();
        assert_eq!(audit.elements, 14400);
        assert_eq!(audit.regular_found, audit.regular_checked);
        assert!(audit.holds(), "{:?}", audit.rows);
        let swap = audit.row(DiagonalShape::SigmaMovesZero, 2).unwrap();
        assert_eq!(swap.max_fpr, Rational::new(16, 60));
        assert_eq!(swap.max_fpr, swap.bound);
        let inner = audit.row(DiagonalShape::SigmaTrivial, 2).unwrap();
        assert!(inner.max_fpr <= Rational::new(1, 5));
    }

    #[test]
    fn alt5_ell2_sampled() {
        let a = alt5(2);
        let audit = diagonal_fpr_audit(&a, 5, Some((7, 200))).unwrap();
        assert!(audit.holds(), "{:?}", audit.rows);
        assert_eq!(audit.regular_found, audit.regular_checked);
    }
}
