use num_integer::Integer;

use super::{certify, fpr, DEFAULT_CAP};
use crate::actions::{Action, NaturalAction, ProductAction, WreathElement};
use crate::error::{Error, Result};
use crate::groups::{GeneratedGroup, GroupElement};
use crate::Rational;

/// A point of `Δ^ℓ` on a regular cycle of `g`. `inner_witness(h)` must return
/// a point of `Δ` on a regular cycle of `h`; it is called once per
/// `σ`-cycle with the product of the components along that cycle.
pub fn product_witness<A, F>(action: &ProductAction<A>, g: &WreathElement<A::Elem>, inner_witness: F) -> Result<Vec<A::Point>>
where
    A: Action,
    F: Fn(&A::Elem) -> Result<A::Point>,
{
    action.check_element(g)?;
    let inner = &action.inner;
    let mut point: Vec<Option<A::Point>> = vec![None; g.rank()];
    let mut expected = 1u64;
    for (cycle, p) in g.cycle_products() {
        let delta = inner_witness(&p)?;
        certify(inner, &p, &delta)?;
        let len = cycle.len();
        expected = expected.lcm(&(len as u64 * p.order()));
        // prefix products h_{c_0} ⋯ h_{c_{j-1}}
        let mut prefix = p.identity_like();
        let mut values = Vec::with_capacity(len);
        for j in 0..len {
            if j > 0 {
                prefix = prefix.mul(&g.components[cycle[j - 1] as usize]);
            }
            values.push(inner.image(&prefix, &delta));
        }
        if p.is_identity() && len > 1 {
            if inner.domain_size() < 2 {
                return Err(Error::Precondition("|Δ| = 1".into()));
            }
            let other = (0..inner.domain_size())
                .map(|i| inner.unrank(i))
                .find(|x| *x != delta)
                .expect("second point");
            values[len - 1] = inner.image(&prefix, &other);
        }
        for (&c, v) in cycle.iter().zip(values) {
            point[c as usize] = Some(v);
        }
    }
    let point: Vec<A::Point> = point.into_iter().map(|x| x.expect("every coordinate lies on a cycle")).collect();
    if expected != g.order() {
        return Err(Error::Certification(format!("block orders give {expected}, |g| = {}", g.order())));
    }
    certify(action, g, &point)?;
    Ok(point)
}

/// Exact maximum fixed-point ratios in `A wr B` on `Δ^ℓ` and in `A` on `Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathFprReport {
    pub wreath_max: Rational,
    pub inner_max: Rational,
    pub elements_scanned: u64,
}

impl WreathFprReport {
    pub fn equal(&self) -> bool {
        self.wreath_max == self.inner_max
    }
}

/// Scans every nonidentity element of `A wr B`.
pub fn wreath_fpr_max(a: &GeneratedGroup, b: &GeneratedGroup) -> Result<WreathFprReport> {
    let delta = a.degree();
    let ell = b.degree();
    let natural = NaturalAction::new(delta);
    let nonidentity = || a.elements().iter().filter(|h| !h.is_identity());
    if !nonidentity().any(|h| (0..delta as u32).any(|x| h.image(x) == x)) {
        return Err(Error::Precondition("A is regular on Δ".into()));
    }
    let size = (delta as u64).checked_pow(ell as u32).unwrap_or(u64::MAX);
    if size > DEFAULT_CAP {
        return Err(Error::CapExceeded {
            what: "product domain",
            cap: DEFAULT_CAP,
            reached: size,
        });
    }
    let mut inner_max = Rational::from_integer(0);
    for h in nonidentity() {
        inner_max = inner_max.max(fpr(&natural, h, DEFAULT_CAP)?);
    }
    let action = ProductAction::new(natural, ell)?;
    let elems = a.elements();
    let total = (elems.len() as u64).pow(ell as u32);
    let mut wreath_max = Rational::from_integer(0);
    let mut scanned = 0u64;
    for sigma in b.elements() {
        for code in 0..total {
            let mut c = code;
            let comps = (0..ell)
                .map(|_| {
                    let h = elems[(c % elems.len() as u64) as usize].clone();
                    c /= elems.len() as u64;
                    h
                })
                .collect();
            let g = WreathElement::new(comps, sigma.clone())?;
            if g.is_identity() {
                continue;
            }
            wreath_max = wreath_max.max(fpr(&action, &g, DEFAULT_CAP)?);
            scanned += 1;
        }
    }
    Ok(WreathFprReport {
        wreath_max,
        inner_max,
        elements_scanned: scanned,
    })
}
