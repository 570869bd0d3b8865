use super::{certify, orbit_length};
use crate::actions::{Action, AffineAction, VectorAction};
use crate::error::{Error, Result};
use crate::gf::{AffineMap, Matrix};
use crate::perm::Permutation;

/// The vectors on regular cycles of `g` and whether they span `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningSet {
    pub matrix: Matrix,
    pub regular_vectors: Vec<Vec<u8>>,
    pub spans: bool,
}

pub fn gl_regular_vector_set(g: &Matrix, cap: u64) -> Result<SpanningSet> {
    let d = g.rows();
    let action = VectorAction::new(g.field().q as u64, d)?;
    let order = g.order();
    let images = action.induced_images(g, cap)?;
    let mut regular = Vec::new();
    for cycle in Permutation::from_images(images)?.cycles_with_fixed() {
        if cycle.len() as u64 == order {
            regular.extend(cycle.into_iter().map(u64::from));
        }
    }
    regular.sort_unstable();
    let regular_vectors: Vec<Vec<u8>> = regular.into_iter().map(|i| action.unrank(i)).collect();
    let spans = !regular_vectors.is_empty() && {
        let data = regular_vectors.concat();
        Matrix::new(g.field(), regular_vectors.len(), d, data)?.rank() == d
    };
    Ok(SpanningSet {
        matrix: g.clone(),
        regular_vectors,
        spans,
    })
}

/// A point of `GF(q)^d` on a regular cycle of the affine map `f`, read off
/// a regular vector of `[[A,0],[v,1]]` with nonzero last coordinate.
pub fn affine_witness(f: &AffineMap, cap: u64) -> Result<Vec<u8>> {
    let d = f.dim();
    let field = f.field();
    let m = f.embed();
    let big = VectorAction::new(field.q as u64, d + 1)?;
    if big.domain_size() > cap {
        return Err(Error::CapExceeded {
            what: "vector space",
            cap,
            reached: big.domain_size(),
        });
    }
    let order = m.order();
    let v = (0..big.domain_size())
        .map(|i| big.unrank(i))
        .filter(|v| v[d] != 0)
        .find(|v| orbit_length(&big, &m, v).map(|l| l == order).unwrap_or(false))
        .ok_or_else(|| Error::Certification(format!("no regular vector off the hyperplane for {f}")))?;
    let lambda_inv = field.inv(v[d])?;
    let w: Vec<u8> = v[..d].iter().map(|&x| field.mul(x, lambda_inv)).collect();
    certify(&AffineAction::new(field.q as u64, d)?, f, &w)?;
    Ok(w)
}
