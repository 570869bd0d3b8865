//! Desk-scale group engine: closure from generators, conjugacy classes,
//! cosets, normalizers, and the named groups used by the checks.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{AffineMap, Field, Matrix, ProjectiveLine, SemilinearMap};
use crate::perm::Permutation;

/// Default cap on enumerated group elements.
pub const DEFAULT_GROUP_CAP: u64 = 5_000_000;

/// Operations shared by every element type an action can be driven by.
/// Products are read left to right: `a.mul(b)` applies `a` first.
pub trait GroupElement: Clone + PartialEq + Send + Sync + fmt::Display + fmt::Debug {
    fn mul(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn identity_like(&self) -> Self;
    fn is_identity(&self) -> bool;
    /// Order in the abstract group the element lives in.
    fn order(&self) -> u64;

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.identity_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl GroupElement for Permutation {
    fn mul(&self, other: &Self) -> Self {
        Permutation::mul(self, other)
    }
    fn inverse(&self) -> Self {
        Permutation::inverse(self)
    }
    fn identity_like(&self) -> Self {
        Permutation::identity(self.degree())
    }
    fn is_identity(&self) -> bool {
        Permutation::is_identity(self)
    }
    fn order(&self) -> u64 {
        Permutation::order(self)
    }
    fn pow(&self, e: u64) -> Self {
        Permutation::pow(self, e)
    }
}

impl GroupElement for Matrix {
    fn mul(&self, other: &Self) -> Self {
        Matrix::mul(self, other).expect("matrices of one group share a shape")
    }
    fn inverse(&self) -> Self {
        Matrix::inverse(self).expect("group elements are invertible")
    }
    fn identity_like(&self) -> Self {
        Matrix::identity(self.field(), self.rows())
    }
    fn is_identity(&self) -> bool {
        Matrix::is_identity(self)
    }
    fn order(&self) -> u64 {
        Matrix::order(self)
    }
    fn pow(&self, e: u64) -> Self {
        Matrix::pow(self, e)
    }
}

impl GroupElement for AffineMap {
    fn mul(&self, other: &Self) -> Self {
        AffineMap::mul(self, other)
    }
    fn inverse(&self) -> Self {
        let linear = self.linear.inverse().expect("affine maps are invertible");
        let f = self.field();
        let t = linear.apply_row(&self.translation).expect("shape");
        AffineMap {
            linear,
            translation: t.into_iter().map(|x| f.neg(x)).collect(),
        }
    }
    fn identity_like(&self) -> Self {
        AffineMap::identity(self.field(), self.dim())
    }
    fn is_identity(&self) -> bool {
        AffineMap::is_identity(self)
    }
    fn order(&self) -> u64 {
        AffineMap::order(self)
    }
    fn pow(&self, e: u64) -> Self {
        AffineMap::pow(self, e)
    }
}

/// A permutation group given by generators, fully enumerated.
#[derive(Clone)]
pub struct GeneratedGroup {
    degree: usize,
    generators: Vec<Permutation>,
    /// Sorted by image sequence.
    elements: Vec<Permutation>,
}

impl fmt::Debug for GeneratedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GeneratedGroup(degree {}, order {}, {} generators)",
            self.degree,
            self.order(),
            self.generators.len()
        )
    }
}

impl GeneratedGroup {
    /// Breadth-first closure under right multiplication by the generators.
    pub fn closure(generators: &[Permutation], cap: u64) -> Result<Self> {
        let degree = match generators.first() {
            Some(g) => g.degree(),
            None => return Err(Error::Precondition("closure needs a generator".into())),
        };
        Self::closure_with_degree(degree, generators, cap)
    }

    /// As [`closure`](Self::closure) but allows an empty generator list.
    pub fn closure_with_degree(degree: usize, generators: &[Permutation], cap: u64) -> Result<Self> {
        if cap == 0 {
            return Err(Error::Precondition("cap must be positive".into()));
        }
        if let Some(bad) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: bad.degree(),
            });
        }
        let id = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(id.clone());
        queue.push_back(id);
        while let Some(x) = queue.pop_front() {
            for s in generators {
                let y = x.mul(s);
                if !seen.contains(&y) {
                    if seen.len() as u64 >= cap {
                        return Err(Error::CapExceeded {
                            what: "group order",
                            cap,
                            reached: seen.len() as u64 + 1,
                        });
                    }
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort_unstable();
        Ok(GeneratedGroup {
            degree,
            generators: generators.to_vec(),
            elements,
        })
    }

    /// The subgroup formed by a set of elements already known to be closed.
    /// Generators are picked greedily in sorted order.
    pub fn from_closed_set(degree: usize, mut elements: Vec<Permutation>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let mut generators: Vec<Permutation> = Vec::new();
        let mut current = Self::closure_with_degree(degree, &[], 1)?;
        for x in &elements {
            if !current.contains(x) {
                generators.push(x.clone());
                current = Self::closure_with_degree(degree, &generators, elements.len() as u64)
                    .map_err(|_| Error::NotSubgroup("element set is not closed".into()))?;
            }
        }
        if current.elements != elements {
            return Err(Error::NotSubgroup("element set is not closed".into()));
        }
        Ok(current)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, g: &Permutation) -> Option<usize> {
        if g.degree() != self.degree {
            return None;
        }
        self.elements.binary_search(g).ok()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.index_of(g).is_some()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    pub fn is_subgroup_of(&self, other: &GeneratedGroup) -> bool {
        self.degree == other.degree && self.elements.iter().all(|x| other.contains(x))
    }

    /// The class `g^G`, sorted.
    pub fn conjugacy_class(&self, g: &Permutation) -> Result<Vec<Permutation>> {
        if !self.contains(g) {
            return Err(Error::NotInGroup(g.to_string()));
        }
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(g.clone());
        queue.push_back(g.clone());
        while let Some(x) = queue.pop_front() {
            for s in &self.generators {
                let y = x.conjugate_by(s);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        let mut class: Vec<Permutation> = seen.into_iter().collect();
        class.sort_unstable();
        Ok(class)
    }

    /// All conjugacy classes, each sorted, ordered by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<Permutation>> {
        let mut assigned = vec![false; self.elements.len()];
        let mut classes = Vec::new();
        for (i, x) in self.elements.iter().enumerate() {
            if assigned[i] {
                continue;
            }
            let class = self.conjugacy_class(x).expect("element of the group");
            for y in &class {
                assigned[self.index_of(y).expect("closed under conjugation")] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Orbit of a point (0-based) under the natural action.
    pub fn orbit(&self, point: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        let mut out = vec![point];
        seen[point as usize] = true;
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for s in &self.generators {
                let y = s.image(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    pub fn point_stabilizer(&self, point: u32) -> Result<GeneratedGroup> {
        let elems = self
            .elements
            .iter()
            .filter(|g| g.image(point) == point)
            .cloned()
            .collect();
        Self::from_closed_set(self.degree, elems)
    }

    /// `N_G(H)` for a subgroup `H` of `G`.
    pub fn normalizer(&self, sub: &GeneratedGroup) -> Result<GeneratedGroup> {
        if !sub.is_subgroup_of(self) {
            return Err(Error::NotSubgroup("normalizer of a non-subgroup".into()));
        }
        let elems = self
            .elements
            .iter()
            .filter(|g| sub.generators.iter().all(|h| sub.contains(&h.conjugate_by(g))))
            .cloned()
            .collect();
        Self::from_closed_set(self.degree, elems)
    }

    pub fn cyclic_subgroup(&self, g: &Permutation) -> Result<GeneratedGroup> {
        if !self.contains(g) {
            return Err(Error::NotInGroup(g.to_string()));
        }
        Self::closure(std::slice::from_ref(g), self.order())
    }

    /// Least element of the given order, if any.
    pub fn element_of_order(&self, order: u64) -> Option<&Permutation> {
        self.elements.iter().find(|g| g.order() == order)
    }

    /// Distinct element orders, ascending.
    pub fn element_orders(&self) -> Vec<u64> {
        let mut orders: Vec<u64> = self.elements.iter().map(|g| g.order()).collect();
        orders.sort_unstable();
        orders.dedup();
        orders
    }
}

/// Right cosets `Hx` of a subgroup, each named by its least element.
#[derive(Clone, Debug)]
pub struct CosetTable {
    pub group: GeneratedGroup,
    pub subgroup: GeneratedGroup,
    /// Canonical representatives, ascending.
    pub representatives: Vec<Permutation>,
    /// Coset index of each element of `group`, by element index.
    coset_of: Vec<u32>,
}

impl CosetTable {
    pub fn new(group: &GeneratedGroup, subgroup: &GeneratedGroup, cap: u64) -> Result<Self> {
        if !subgroup.is_subgroup_of(group) {
            return Err(Error::NotSubgroup(format!(
                "subgroup of order {} is not contained in the group",
                subgroup.order()
            )));
        }
        let index = group.order() / subgroup.order();
        if index > cap {
            return Err(Error::CapExceeded {
                what: "coset count",
                cap,
                reached: index,
            });
        }
        let mut coset_of = vec![u32::MAX; group.elements.len()];
        let mut representatives = Vec::with_capacity(index as usize);
        for (i, x) in group.elements.iter().enumerate() {
            if coset_of[i] != u32::MAX {
                continue;
            }
            // elements are visited in sorted order, so x is the least of Hx
            let c = representatives.len() as u32;
            for h in &subgroup.elements {
                let j = group.index_of(&h.mul(x)).expect("closed");
                coset_of[j] = c;
            }
            representatives.push(x.clone());
        }
        Ok(CosetTable {
            group: group.clone(),
            subgroup: subgroup.clone(),
            representatives,
            coset_of,
        })
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    /// `Hx -> Hxg`.
    pub fn apply(&self, g: &Permutation, coset: usize) -> Result<usize> {
        let y = self.representatives[coset].mul(g);
        let j = self
            .group
            .index_of(&y)
            .ok_or_else(|| Error::NotInGroup(g.to_string()))?;
        Ok(self.coset_of[j] as usize)
    }

    /// The permutation of the cosets induced by `g`.
    pub fn induced(&self, g: &Permutation) -> Result<Permutation> {
        if !self.group.contains(g) {
            return Err(Error::NotInGroup(g.to_string()));
        }
        let images = (0..self.len())
            .map(|c| self.apply(g, c).map(|x| x as u32))
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }
}

/// Automorphisms of `target` induced by conjugation inside `ambient`.
#[derive(Clone, Debug)]
pub struct AmbientAutomorphisms {
    pub target: GeneratedGroup,
    pub ambient: GeneratedGroup,
    /// One ambient element per distinct induced automorphism, least first.
    pub representatives: Vec<Permutation>,
}

impl AmbientAutomorphisms {
    pub fn new(target: GeneratedGroup, ambient: GeneratedGroup) -> Result<Self> {
        if target.degree != ambient.degree {
            return Err(Error::DegreeMismatch {
                expected: target.degree,
                found: ambient.degree,
            });
        }
        let mut seen: HashSet<Vec<Permutation>> = HashSet::new();
        let mut representatives = Vec::new();
        for a in &ambient.elements {
            let images: Vec<Permutation> =
                target.generators.iter().map(|t| t.conjugate_by(a)).collect();
            if let Some(bad) = images.iter().find(|x| !target.contains(x)) {
                return Err(Error::Precondition(format!(
                    "ambient element {a} does not normalize the target (image {bad})"
                )));
            }
            if seen.insert(images) {
                representatives.push(a.clone());
            }
        }
        Ok(AmbientAutomorphisms {
            target,
            ambient,
            representatives,
        })
    }

    /// Number of distinct automorphisms realized.
    pub fn count(&self) -> usize {
        self.representatives.len()
    }
}

pub fn symmetric(n: usize) -> Result<GeneratedGroup> {
    symmetric_capped(n, DEFAULT_GROUP_CAP)
}

pub fn symmetric_capped(n: usize, cap: u64) -> Result<GeneratedGroup> {
    GeneratedGroup::closure_with_degree(n, &symmetric_generators(n), cap)
}

/// `(1 2 … n)` and `(1 2)`.
pub fn symmetric_generators(n: usize) -> Vec<Permutation> {
    if n < 2 {
        return vec![];
    }
    let cycle: Vec<u32> = (0..n as u32).collect();
    vec![
        Permutation::from_cycles(n, &[cycle]).expect("valid"),
        Permutation::from_cycles(n, &[vec![0, 1]]).expect("valid"),
    ]
}

/// The 3-cycles `(1 2 i)`.
pub fn alternating_generators(n: usize) -> Vec<Permutation> {
    (2..n as u32)
        .map(|i| Permutation::from_cycles(n, &[vec![0, 1, i]]).expect("valid"))
        .collect()
}

pub fn alternating(n: usize) -> Result<GeneratedGroup> {
    GeneratedGroup::closure_with_degree(n, &alternating_generators(n), DEFAULT_GROUP_CAP)
}

pub fn is_even(p: &Permutation) -> bool {
    p.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
}

/// Which projective group to build on the `q+1` points of the line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectiveKind {
    Psl2,
    Pgl2,
    PGammaL2,
    /// `PSL_2(9)` extended by a diagonal non-square scaling composed with Frobenius.
    M10,
}

/// Semilinear generators for the chosen projective group over `GF(q)`.
pub fn projective_generators(q: u64, kind: ProjectiveKind) -> Result<Vec<SemilinearMap>> {
    let f = Field::get(q)?;
    let m = |rows: [[u8; 2]; 2]| Matrix::from_rows(f, &[rows[0].to_vec(), rows[1].to_vec()]);
    let mut gens = Vec::new();
    // transvections by a basis of GF(q) over GF(p), and the Weyl element
    let mut b = 1u8;
    for _ in 0..f.e {
        gens.push(SemilinearMap::linear(m([[1, b], [0, 1]])?)?);
        b = f.mul(b, if f.e > 1 { f.p } else { 1 });
    }
    gens.push(SemilinearMap::linear(m([[0, 1], [f.neg(1), 0]])?)?);
    let w = f.primitive_element();
    match kind {
        ProjectiveKind::Psl2 => {}
        ProjectiveKind::Pgl2 => gens.push(SemilinearMap::linear(m([[w, 0], [0, 1]])?)?),
        ProjectiveKind::PGammaL2 => {
            gens.push(SemilinearMap::linear(m([[w, 0], [0, 1]])?)?);
            if f.e > 1 {
                gens.push(SemilinearMap::new(Matrix::identity(f, 2), 1)?);
            }
        }
        ProjectiveKind::M10 => {
            if q != 9 {
                return Err(Error::Precondition("M10 lives over GF(9)".into()));
            }
            gens.push(SemilinearMap::new(m([[w, 0], [0, 1]])?, 1)?);
        }
    }
    Ok(gens)
}

/// The projective group as permutations of the line (point `i` is the
/// `i`-th point of [`ProjectiveLine`]).
pub fn projective_group(q: u64, kind: ProjectiveKind) -> Result<GeneratedGroup> {
    let line = ProjectiveLine::new(q)?;
    let gens = projective_generators(q, kind)?
        .iter()
        .map(|s| line.permutation(s))
        .collect::<Result<Vec<_>>>()?;
    GeneratedGroup::closure(&gens, DEFAULT_GROUP_CAP)
}

/// `W` for the diagonal action of `T^{ℓ+1}.(Out(T) x Sym(ℓ+1))` on `T^ℓ`,
/// as permutations of the `|T|^ℓ` points.
pub fn realize_diagonal_group(amb: &AmbientAutomorphisms, ell: usize) -> Result<Vec<Permutation>> {
    let action = crate::actions::DiagonalAction::new(amb.clone(), ell)?;
    action.w_generators()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::all_permutations;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse(text, n).unwrap()
    }

    #[test]
    fn closure_examples() {
        let s3 = GeneratedGroup::closure(&[p("(1 2)", 3), p("(1 2 3)", 3)], 100).unwrap();
        assert_eq!(s3.order(), 6);
        let s5 = GeneratedGroup::closure(&[p("(1 2 3 4 5)", 5), p("(1 2)", 5)], 1000).unwrap();
        assert_eq!(s5.order(), 120);
        assert!(s5.contains(&p("(1 2)", 5)));
        assert!(s5.contains(&Permutation::identity(5)));
        let err = GeneratedGroup::closure(&[p("(1 2 3 4 5)", 5), p("(1 2)", 5)], 50).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { reached: 51, .. }));
        let mismatch = GeneratedGroup::closure(&[p("(1 2)", 3), p("(1 2)", 4)], 10);
        assert!(matches!(mismatch, Err(Error::DegreeMismatch { .. })));
    }

    #[test]
    fn closure_is_generator_order_independent() {
        let gens = vec![p("(1 2 3 4 5 6)", 6), p("(1 2)", 6), p("(2 4)(3 5)", 6)];
        let a = GeneratedGroup::closure(&gens, 10_000).unwrap();
        let mut rev = gens.clone();
        rev.reverse();
        let b = GeneratedGroup::closure(&rev, 10_000).unwrap();
        assert_eq!(a.elements(), b.elements());
        // elements sorted by image sequence
        assert!(a.elements().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn symmetric_matches_full_enumeration() {
        for n in 1..=6 {
            let g = symmetric(n).unwrap();
            assert_eq!(g.elements(), all_permutations(n).as_slice());
        }
        assert_eq!(alternating(6).unwrap().order(), 360);
        assert!(alternating(6).unwrap().elements().iter().all(is_even));
    }

    #[test]
    fn class_sizes() {
        let s4 = symmetric(4).unwrap();
        assert_eq!(s4.conjugacy_class(&p("(1 2)", 4)).unwrap().len(), 6);
        assert_eq!(s4.conjugacy_class(&s4.identity()).unwrap(), vec![s4.identity()]);
        let s6 = symmetric(6).unwrap();
        let c = s6.conjugacy_class(&p("(1 2 3 4 5 6)", 6)).unwrap();
        // orbit-stabilizer: |S6| / |C(g)| with C(g) the cyclic group of order 6
        assert_eq!(c.len() as u64, 720 / 6);
        assert_eq!(s4.conjugacy_classes().len(), 5);
        let outside = p("(1 2)", 4);
        let a4 = alternating(4).unwrap();
        assert!(matches!(a4.conjugacy_class(&outside), Err(Error::NotInGroup(_))));
    }

    #[test]
    fn projective_orders() {
        // |PGL_2(q)| = q(q-1)(q+1), |PSL_2(q)| half that for odd q
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
            let pgl = projective_group(q, ProjectiveKind::Pgl2).unwrap();
            assert_eq!(pgl.order(), q * (q - 1) * (q + 1), "PGL2({q})");
            let psl = projective_group(q, ProjectiveKind::Psl2).unwrap();
            let d = if q % 2 == 1 { 2 } else { 1 };
            assert_eq!(psl.order(), q * (q - 1) * (q + 1) / d, "PSL2({q})");
            assert!(psl.is_subgroup_of(&pgl));
        }
        assert_eq!(projective_group(9, ProjectiveKind::PGammaL2).unwrap().order(), 1440);
        assert_eq!(projective_group(4, ProjectiveKind::PGammaL2).unwrap().order(), 120);
        assert_eq!(projective_group(8, ProjectiveKind::PGammaL2).unwrap().order(), 1512);
    }

    #[test]
    fn pgl2_5_from_two_matrices() {
        let line = ProjectiveLine::new(5).unwrap();
        let f = line.field;
        let a = Matrix::from_rows(f, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = Matrix::from_rows(f, &[vec![0, 1], vec![2, 0]]).unwrap();
        let gens = [line.matrix_permutation(&a).unwrap(), line.matrix_permutation(&b).unwrap()];
        let g = GeneratedGroup::closure(&gens, 10_000).unwrap();
        assert_eq!(g.order(), 5 * 4 * 6);
        assert!(g.is_transitive());
    }

    #[test]
    fn the_three_groups_between_psl2_9_and_pgammal2_9() {
        let psl = projective_group(9, ProjectiveKind::Psl2).unwrap();
        let pgl = projective_group(9, ProjectiveKind::Pgl2).unwrap();
        let m10 = projective_group(9, ProjectiveKind::M10).unwrap();
        let pgaml = projective_group(9, ProjectiveKind::PGammaL2).unwrap();
        assert_eq!(psl.order(), 360);
        assert_eq!(m10.order(), 720);
        assert!(psl.is_subgroup_of(&m10) && m10.is_subgroup_of(&pgaml));
        assert_eq!(m10.element_orders(), vec![1, 2, 3, 4, 5, 8]);
        assert!(pgl.element_orders().contains(&10));
        let s6 = projective_group(9, ProjectiveKind::PGammaL2).unwrap();
        let sym6_like: Vec<Permutation> = s6
            .elements()
            .iter()
            .filter(|g| !pgl.contains(g) && !m10.contains(g) || psl.contains(g))
            .cloned()
            .collect();
        let s6 = GeneratedGroup::from_closed_set(10, sym6_like).unwrap();
        assert_eq!(s6.order(), 720);
        assert!(s6.element_orders().contains(&6));
    }

    #[test]
    fn cosets_of_a_transposition_in_s3() {
        let s3 = symmetric(3).unwrap();
        let h = GeneratedGroup::closure(&[p("(1 2)", 3)], 10).unwrap();
        let t = CosetTable::new(&s3, &h, 100).unwrap();
        assert_eq!(t.len(), 3);
        for g in s3.elements() {
            let induced = t.induced(g).unwrap();
            assert_eq!(induced.order(), g.order());
        }
        let not_sub = GeneratedGroup::closure(&[p("(1 2)", 4)], 10).unwrap();
        assert!(matches!(
            CosetTable::new(&symmetric(4).unwrap(), &GeneratedGroup::closure(&[p("(1 2)(3 4)", 4)], 10).unwrap(), 1),
            Err(Error::CapExceeded { .. })
        ));
        assert!(CosetTable::new(&s3, &not_sub, 100).is_err());
    }

    #[test]
    fn stabilizer_recovers_degree_ten() {
        let g = projective_group(9, ProjectiveKind::PGammaL2).unwrap();
        let h = g.point_stabilizer(0).unwrap();
        assert_eq!(h.order(), 144);
        let t = CosetTable::new(&g, &h, 100).unwrap();
        assert_eq!(t.len(), 10);
        let orbit = g.orbit(0);
        assert_eq!(orbit.len(), 10);
    }

    #[test]
    fn ambient_automorphisms_of_alt5() {
        let amb = AmbientAutomorphisms::new(alternating(5).unwrap(), symmetric(5).unwrap()).unwrap();
        assert_eq!(amb.count(), 120);
        let a4 = alternating(4).unwrap();
        let s4 = symmetric(4).unwrap();
        // S4 acts faithfully on A4 by conjugation
        assert_eq!(AmbientAutomorphisms::new(a4, s4).unwrap().count(), 24);
        let c = GeneratedGroup::closure(&[p("(1 2 3)", 4)], 10).unwrap();
        assert!(AmbientAutomorphisms::new(c, symmetric(4).unwrap()).is_err());
    }

    #[test]
    fn normalizers() {
        let s5 = symmetric(5).unwrap();
        let c5 = s5.cyclic_subgroup(&p("(1 2 3 4 5)", 5)).unwrap();
        assert_eq!(s5.normalizer(&c5).unwrap().order(), 20);
    }
}
