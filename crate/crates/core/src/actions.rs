//! The [`Action`] trait and every induced action the decisions run on.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{format_vector, vector_from_index, vector_index, AffineMap, Field, Matrix};
use crate::groups::{AmbientAutomorphisms, CosetTable, GeneratedGroup, GroupElement};
use crate::perm::Permutation;

/// Hard cap on domain sizes for full scans.
pub const DEFAULT_DOMAIN_CAP: u64 = 10_000_000;

/// A group action on an indexable domain, written on the right.
pub trait Action: Send + Sync {
    type Elem: GroupElement;
    type Point: Clone + Eq + Hash + fmt::Debug + Send + Sync;

    /// Short description in the action-spec language.
    fn describe(&self) -> String;
    fn domain_size(&self) -> u64;
    /// Errors unless `g` is admissible for this action.
    fn check_element(&self, g: &Self::Elem) -> Result<()>;
    /// Errors unless `x` is a canonical point of the domain.
    fn check_point(&self, x: &Self::Point) -> Result<()>;
    /// Dense index of a canonical point.
    fn index_of(&self, x: &Self::Point) -> u64;
    fn unrank(&self, i: u64) -> Self::Point;
    /// Image of a canonical point under an admissible element.
    fn image(&self, g: &Self::Elem, x: &Self::Point) -> Self::Point;
    fn render_point(&self, x: &Self::Point) -> String;

    /// Report flags attached to every verdict in this action.
    fn flags(&self) -> Vec<String> {
        Vec::new()
    }

    fn rank(&self, x: &Self::Point) -> Result<u64> {
        self.check_point(x)?;
        Ok(self.index_of(x))
    }

    /// Checked application `x^g`.
    fn apply(&self, g: &Self::Elem, x: &Self::Point) -> Result<Self::Point> {
        self.check_element(g)?;
        self.check_point(x)?;
        Ok(self.image(g, x))
    }

    fn image_index(&self, g: &Self::Elem, i: u64) -> u64 {
        self.index_of(&self.image(g, &self.unrank(i)))
    }

    /// Order of `g` in the abstract group acting.
    fn element_order(&self, g: &Self::Elem) -> u64 {
        g.order()
    }

    /// The induced permutation of the domain as an image table.
    fn induced_images(&self, g: &Self::Elem, cap: u64) -> Result<Vec<u32>> {
        self.check_element(g)?;
        let n = self.domain_size();
        if n > cap {
            return Err(Error::CapExceeded {
                what: "domain size",
                cap,
                reached: n,
            });
        }
        Ok((0..n)
            .into_par_iter()
            .map(|i| self.image_index(g, i) as u32)
            .collect())
    }
}

/// Membership bitset over domain indices.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FixSet {
    words: Vec<u64>,
    len: u64,
}

impl FixSet {
    pub fn empty(len: u64) -> Self {
        FixSet {
            words: vec![0; len.div_ceil(64) as usize],
            len,
        }
    }

    pub fn from_predicate<F: Fn(u64) -> bool + Sync>(len: u64, pred: F) -> Self {
        let words = (0..len.div_ceil(64))
            .into_par_iter()
            .map(|w| {
                let mut word = 0u64;
                for b in 0..64 {
                    let i = w * 64 + b;
                    if i < len && pred(i) {
                        word |= 1 << b;
                    }
                }
                word
            })
            .collect();
        FixSet { words, len }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn insert(&mut self, i: u64) {
        self.words[(i / 64) as usize] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: u64) -> bool {
        self.words[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn union_with(&mut self, other: &FixSet) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Least index not in the set.
    pub fn first_missing(&self) -> Option<u64> {
        for (w, &word) in self.words.iter().enumerate() {
            if word != u64::MAX {
                let i = w as u64 * 64 + (!word).trailing_zeros() as u64;
                return (i < self.len).then_some(i);
            }
        }
        None
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.len).filter(|&i| self.contains(i))
    }
}

fn check_perm_degree(g: &Permutation, n: usize) -> Result<()> {
    if g.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: g.degree(),
        });
    }
    Ok(())
}

/// `Sym(n)` on `{1..n}` (points stored 0-based).
#[derive(Clone, Debug)]
pub struct NaturalAction {
    pub degree: usize,
}

impl NaturalAction {
    pub fn new(degree: usize) -> Self {
        NaturalAction { degree }
    }
}

impl Action for NaturalAction {
    type Elem = Permutation;
    type Point = u32;

    fn describe(&self) -> String {
        "natural".into()
    }
    fn domain_size(&self) -> u64 {
        self.degree as u64
    }
    fn check_element(&self, g: &Permutation) -> Result<()> {
        check_perm_degree(g, self.degree)
    }
    fn check_point(&self, x: &u32) -> Result<()> {
        if (*x as usize) < self.degree {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("point {} not in 1..{}", x + 1, self.degree)))
        }
    }
    fn index_of(&self, x: &u32) -> u64 {
        *x as u64
    }
    fn unrank(&self, i: u64) -> u32 {
        i as u32
    }
    fn image(&self, g: &Permutation, x: &u32) -> u32 {
        g.image(*x)
    }
    fn image_index(&self, g: &Permutation, i: u64) -> u64 {
        g.image(i as u32) as u64
    }
    fn render_point(&self, x: &u32) -> String {
        (x + 1).to_string()
    }
}

fn binomial_table(n: usize) -> Vec<Vec<u64>> {
    let mut c = vec![vec![0u64; n + 2]; n + 2];
    for i in 0..=n + 1 {
        c[i][0] = 1;
        for j in 1..=i {
            c[i][j] = c[i - 1][j - 1].saturating_add(c[i - 1][j]);
        }
    }
    c
}

/// `Sym(m)` on `k`-subsets, ranked in colex order.
#[derive(Clone, Debug)]
pub struct KSetAction {
    pub m: usize,
    pub k: usize,
    binom: Vec<Vec<u64>>,
}

impl KSetAction {
    pub fn new(m: usize, k: usize) -> Result<Self> {
        if k == 0 || k > m || m > 64 {
            return Err(Error::OutOfRange(format!("k-sets need 1 <= k <= m <= 64 (m={m}, k={k})")));
        }
        Ok(KSetAction {
            m,
            k,
            binom: binomial_table(m),
        })
    }

    pub fn complement(&self, x: &[u32]) -> Vec<u32> {
        (0..self.m as u32).filter(|p| !x.contains(p)).collect()
    }
}

impl Action for KSetAction {
    type Elem = Permutation;
    type Point = Vec<u32>;

    fn describe(&self) -> String {
        format!("ksets:{}", self.k)
    }
    fn domain_size(&self) -> u64 {
        self.binom[self.m][self.k]
    }
    fn check_element(&self, g: &Permutation) -> Result<()> {
        check_perm_degree(g, self.m)
    }
    fn check_point(&self, x: &Vec<u32>) -> Result<()> {
        if x.len() != self.k {
            return Err(Error::NonCanonical(format!("expected {} points, got {}", self.k, x.len())));
        }
        if x.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::NonCanonical("k-set must be strictly ascending".into()));
        }
        if x.iter().any(|&p| p as usize >= self.m) {
            return Err(Error::OutOfRange(format!("point outside 1..{}", self.m)));
        }
        Ok(())
    }
    fn index_of(&self, x: &Vec<u32>) -> u64 {
        x.iter()
            .enumerate()
            .map(|(i, &p)| self.binom[p as usize][i + 1])
            .sum()
    }
    fn unrank(&self, mut i: u64) -> Vec<u32> {
        let mut out = vec![0u32; self.k];
        let mut p = self.m;
        for slot in (0..self.k).rev() {
            p -= 1;
            while self.binom[p][slot + 1] > i {
                p -= 1;
            }
            out[slot] = p as u32;
            i -= self.binom[p][slot + 1];
        }
        out
    }
    fn image(&self, g: &Permutation, x: &Vec<u32>) -> Vec<u32> {
        let mut y: Vec<u32> = x.iter().map(|&p| g.image(p)).collect();
        y.sort_unstable();
        y
    }
    fn render_point(&self, x: &Vec<u32>) -> String {
        render_set(x)
    }
}

fn render_set(x: &[u32]) -> String {
    let parts: Vec<String> = x.iter().map(|p| (p + 1).to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

/// `Sym(ab)` on partitions of `{1..ab}` into `b` blocks of size `a`.
/// Canonical form: blocks ascending internally, ordered by their minima.
#[derive(Debug)]
pub struct PartitionAction {
    pub a: usize,
    pub b: usize,
    table: OnceLock<(Vec<Vec<Vec<u32>>>, HashMap<Vec<Vec<u32>>, u64>)>,
}

impl Clone for PartitionAction {
    fn clone(&self) -> Self {
        PartitionAction::new(self.a, self.b).expect("already validated")
    }
}

/// Number of `(a,b)`-uniform partitions, `(ab)! / (a!^b b!)`, saturating.
pub fn uniform_partition_count(a: usize, b: usize) -> u64 {
    // product over blocks of C(remaining - 1, a - 1)
    let binom = binomial_table(a * b);
    let mut total: u64 = 1;
    let mut remaining = a * b;
    for _ in 0..b {
        total = total.saturating_mul(binom[remaining - 1][a - 1]);
        remaining -= a;
    }
    total
}

impl PartitionAction {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a * b > 64 {
            return Err(Error::OutOfRange(format!("partitions need a,b >= 1 and ab <= 64 (a={a}, b={b})")));
        }
        Ok(PartitionAction {
            a,
            b,
            table: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.a * self.b
    }

    pub fn is_exceptional(&self) -> bool {
        self.a == 2 && self.b == 2
    }

    fn table(&self) -> &(Vec<Vec<Vec<u32>>>, HashMap<Vec<Vec<u32>>, u64>) {
        self.table.get_or_init(|| {
            let count = uniform_partition_count(self.a, self.b);
            assert!(count <= DEFAULT_DOMAIN_CAP, "partition domain of size {count} over the cap");
            let mut all = Vec::with_capacity(count as usize);
            let mut current: Vec<Vec<u32>> = Vec::new();
            let mut used = vec![false; self.degree()];
            self.enumerate(&mut current, &mut used, &mut all);
            let index = all.iter().enumerate().map(|(i, p)| (p.clone(), i as u64)).collect();
            (all, index)
        })
    }

    fn enumerate(&self, current: &mut Vec<Vec<u32>>, used: &mut [bool], out: &mut Vec<Vec<Vec<u32>>>) {
        let Some(first) = used.iter().position(|u| !u) else {
            out.push(current.clone());
            return;
        };
        used[first] = true;
        let mut block = vec![first as u32];
        self.extend_block(&mut block, first + 1, current, used, out);
        used[first] = false;
    }

    fn extend_block(
        &self,
        block: &mut Vec<u32>,
        from: usize,
        current: &mut Vec<Vec<u32>>,
        used: &mut [bool],
        out: &mut Vec<Vec<Vec<u32>>>,
    ) {
        if block.len() == self.a {
            current.push(block.clone());
            self.enumerate(current, used, out);
            current.pop();
            return;
        }
        for p in from..used.len() {
            if !used[p] {
                used[p] = true;
                block.push(p as u32);
                self.extend_block(block, p + 1, current, used, out);
                block.pop();
                used[p] = false;
            }
        }
    }

    /// Sorts blocks internally and by minimum.
    pub fn canonicalize(mut blocks: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        blocks
    }
}

impl Action for PartitionAction {
    type Elem = Permutation;
    type Point = Vec<Vec<u32>>;

    fn describe(&self) -> String {
        format!("partitions:{}x{}", self.a, self.b)
    }
    fn flags(&self) -> Vec<String> {
        if self.is_exceptional() {
            vec!["unfaithful kernel".into()]
        } else {
            Vec::new()
        }
    }
    fn domain_size(&self) -> u64 {
        uniform_partition_count(self.a, self.b)
    }
    fn check_element(&self, g: &Permutation) -> Result<()> {
        check_perm_degree(g, self.degree())
    }
    fn check_point(&self, x: &Vec<Vec<u32>>) -> Result<()> {
        if x.len() != self.b || x.iter().any(|blk| blk.len() != self.a) {
            return Err(Error::NonCanonical(format!("expected {} blocks of size {}", self.b, self.a)));
        }
        let mut seen = vec![false; self.degree()];
        for blk in x {
            for &p in blk {
                if p as usize >= self.degree() {
                    return Err(Error::OutOfRange(format!("point {} outside 1..{}", p + 1, self.degree())));
                }
                if std::mem::replace(&mut seen[p as usize], true) {
                    return Err(Error::NonCanonical(format!("point {} repeated", p + 1)));
                }
            }
            if blk.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::NonCanonical("blocks must be ascending".into()));
            }
        }
        if x.windows(2).any(|w| w[0][0] >= w[1][0]) {
            return Err(Error::NonCanonical("blocks must be ordered by minimum".into()));
        }
        Ok(())
    }
    fn index_of(&self, x: &Vec<Vec<u32>>) -> u64 {
        self.table().1[x]
    }
    fn unrank(&self, i: u64) -> Vec<Vec<u32>> {
        self.table().0[i as usize].clone()
    }
    fn image(&self, g: &Permutation, x: &Vec<Vec<u32>>) -> Vec<Vec<u32>> {
        Self::canonicalize(
            x.iter()
                .map(|blk| blk.iter().map(|&p| g.image(p)).collect())
                .collect(),
        )
    }
    fn render_point(&self, x: &Vec<Vec<u32>>) -> String {
        let parts: Vec<String> = x.iter().map(|b| render_set(b)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// `(h_1, …, h_r; σ)` in `H wr Sym(r)`, acting by `(ω^g)_{iσ} = ω_i^{h_i}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WreathElement<E> {
    pub components: Vec<E>,
    pub sigma: Permutation,
}

impl<E: GroupElement> WreathElement<E> {
    pub fn new(components: Vec<E>, sigma: Permutation) -> Result<Self> {
        if components.is_empty() || components.len() != sigma.degree() {
            return Err(Error::Shape(format!(
                "{} components with a coordinate permutation of degree {}",
                components.len(),
                sigma.degree()
            )));
        }
        Ok(WreathElement { components, sigma })
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    /// For each cycle `c_0 … c_{L-1}` of `σ`: the cycle and the product
    /// `h_{c_0} ⋯ h_{c_{L-1}}`.
    pub fn cycle_products(&self) -> Vec<(Vec<u32>, E)> {
        self.sigma
            .cycles_with_fixed()
            .into_iter()
            .map(|cyc| {
                let prod = cyc[1..]
                    .iter()
                    .fold(self.components[cyc[0] as usize].clone(), |acc, &c| {
                        acc.mul(&self.components[c as usize])
                    });
                (cyc, prod)
            })
            .collect()
    }
}

impl<E: GroupElement> GroupElement for WreathElement<E> {
    fn mul(&self, other: &Self) -> Self {
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(i, h)| h.mul(&other.components[self.sigma.image(i as u32) as usize]))
            .collect();
        WreathElement {
            components,
            sigma: self.sigma.mul(&other.sigma),
        }
    }
    fn inverse(&self) -> Self {
        let sinv = self.sigma.inverse();
        let components = (0..self.rank())
            .map(|j| self.components[sinv.image(j as u32) as usize].inverse())
            .collect();
        WreathElement {
            components,
            sigma: sinv,
        }
    }
    fn identity_like(&self) -> Self {
        WreathElement {
            components: self.components.iter().map(|h| h.identity_like()).collect(),
            sigma: Permutation::identity(self.rank()),
        }
    }
    fn is_identity(&self) -> bool {
        self.sigma.is_identity() && self.components.iter().all(|h| h.is_identity())
    }
    fn order(&self) -> u64 {
        self.cycle_products()
            .iter()
            .fold(1, |acc, (cyc, prod)| num_integer::lcm(acc, cyc.len() as u64 * prod.order()))
    }
}

impl<E: fmt::Display> fmt::Display for WreathElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, h) in self.components.iter().enumerate() {
            if i > 0 {
                write!(f, ";")?;
            }
            write!(f, "{h}")?;
        }
        write!(f, "@{}", self.sigma)
    }
}

impl<E: fmt::Display> fmt::Debug for WreathElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Wreath[{self}]")
    }
}

/// Product action of `H wr Sym(r)` on `Δ^r`; coordinate 0 is most significant
/// in the index.
#[derive(Clone, Debug)]
pub struct ProductAction<A> {
    pub inner: A,
    pub r: usize,
}

impl<A: Action> ProductAction<A> {
    pub fn new(inner: A, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::OutOfRange("product action needs r >= 1".into()));
        }
        Ok(ProductAction { inner, r })
    }
}

impl<A: Action> Action for ProductAction<A> {
    type Elem = WreathElement<A::Elem>;
    type Point = Vec<A::Point>;

    fn describe(&self) -> String {
        format!("product:{}^{}", self.inner.describe(), self.r)
    }
    fn domain_size(&self) -> u64 {
        self.inner.domain_size().saturating_pow(self.r as u32)
    }
    fn check_element(&self, g: &Self::Elem) -> Result<()> {
        if g.rank() != self.r || g.sigma.degree() != self.r {
            return Err(Error::Inadmissible(format!(
                "wreath element of rank {} for product action of rank {}",
                g.rank(),
                self.r
            )));
        }
        g.components.iter().try_for_each(|h| self.inner.check_element(h))
    }
    fn check_point(&self, x: &Self::Point) -> Result<()> {
        if x.len() != self.r {
            return Err(Error::NonCanonical(format!("expected {} coordinates", self.r)));
        }
        x.iter().try_for_each(|c| self.inner.check_point(c))
    }
    fn index_of(&self, x: &Self::Point) -> u64 {
        let n = self.inner.domain_size();
        x.iter().fold(0, |acc, c| acc * n + self.inner.index_of(c))
    }
    fn unrank(&self, mut i: u64) -> Self::Point {
        let n = self.inner.domain_size();
        let mut coords = Vec::with_capacity(self.r);
        for _ in 0..self.r {
            coords.push(self.inner.unrank(i % n));
            i /= n;
        }
        coords.reverse();
        coords
    }
    fn image(&self, g: &Self::Elem, x: &Self::Point) -> Self::Point {
        let mut out = x.clone();
        for (i, (xi, hi)) in x.iter().zip(&g.components).enumerate() {
            out[g.sigma.image(i as u32) as usize] = self.inner.image(hi, xi);
        }
        out
    }
    fn render_point(&self, x: &Self::Point) -> String {
        let parts: Vec<String> = x.iter().map(|c| self.inner.render_point(c)).collect();
        format!("({})", parts.join(","))
    }
}

/// `GL_d(q)` on row vectors.
#[derive(Clone, Debug)]
pub struct VectorAction {
    pub field: &'static Field,
    pub d: usize,
}

impl VectorAction {
    pub fn new(q: u64, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::OutOfRange("dimension must be positive".into()));
        }
        Ok(VectorAction {
            field: Field::get(q)?,
            d,
        })
    }
}

fn check_vector(v: &[u8], d: usize, q: u8) -> Result<()> {
    if v.len() != d {
        return Err(Error::Shape(format!("vector of length {} in dimension {d}", v.len())));
    }
    if v.iter().any(|&x| x >= q) {
        return Err(Error::OutOfRange(format!("vector entry outside GF({q})")));
    }
    Ok(())
}

impl Action for VectorAction {
    type Elem = Matrix;
    type Point = Vec<u8>;

    fn describe(&self) -> String {
        "vectors".into()
    }
    fn domain_size(&self) -> u64 {
        (self.field.q as u64).saturating_pow(self.d as u32)
    }
    fn check_element(&self, g: &Matrix) -> Result<()> {
        if g.field().q != self.field.q || g.rows() != self.d || g.cols() != self.d {
            return Err(Error::Inadmissible(format!("expected an invertible {0}x{0} matrix over GF({1})", self.d, self.field.q)));
        }
        if !g.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(())
    }
    fn check_point(&self, x: &Vec<u8>) -> Result<()> {
        check_vector(x, self.d, self.field.q)
    }
    fn index_of(&self, x: &Vec<u8>) -> u64 {
        vector_index(x, self.field.q as u64)
    }
    fn unrank(&self, i: u64) -> Vec<u8> {
        vector_from_index(i, self.field.q as u64, self.d)
    }
    fn image(&self, g: &Matrix, x: &Vec<u8>) -> Vec<u8> {
        g.apply_row(x).expect("checked shape")
    }
    fn render_point(&self, x: &Vec<u8>) -> String {
        format_vector(x)
    }
}

/// `AGL_d(q)` on `GF(q)^d`.
#[derive(Clone, Debug)]
pub struct AffineAction {
    pub field: &'static Field,
    pub d: usize,
}

impl AffineAction {
    pub fn new(q: u64, d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::OutOfRange("dimension must be positive".into()));
        }
        Ok(AffineAction {
            field: Field::get(q)?,
            d,
        })
    }
}

impl Action for AffineAction {
    type Elem = AffineMap;
    type Point = Vec<u8>;

    fn describe(&self) -> String {
        "affine".into()
    }
    fn domain_size(&self) -> u64 {
        (self.field.q as u64).saturating_pow(self.d as u32)
    }
    fn check_element(&self, g: &AffineMap) -> Result<()> {
        if g.field().q != self.field.q || g.dim() != self.d {
            return Err(Error::Inadmissible(format!("expected an affine map of GF({})^{}", self.field.q, self.d)));
        }
        if !g.linear.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(())
    }
    fn check_point(&self, x: &Vec<u8>) -> Result<()> {
        check_vector(x, self.d, self.field.q)
    }
    fn index_of(&self, x: &Vec<u8>) -> u64 {
        vector_index(x, self.field.q as u64)
    }
    fn unrank(&self, i: u64) -> Vec<u8> {
        vector_from_index(i, self.field.q as u64, self.d)
    }
    fn image(&self, g: &AffineMap, x: &Vec<u8>) -> Vec<u8> {
        g.apply(x).expect("checked shape")
    }
    fn render_point(&self, x: &Vec<u8>) -> String {
        format_vector(x)
    }
}

/// A group acting on the right cosets of a subgroup.
#[derive(Clone, Debug)]
pub struct CosetAction {
    pub table: CosetTable,
}

impl CosetAction {
    pub fn new(group: &GeneratedGroup, subgroup: &GeneratedGroup, cap: u64) -> Result<Self> {
        Ok(CosetAction {
            table: CosetTable::new(group, subgroup, cap)?,
        })
    }
}

impl Action for CosetAction {
    type Elem = Permutation;
    type Point = usize;

    fn describe(&self) -> String {
        format!("cosets:order{}", self.table.subgroup.order())
    }
    fn domain_size(&self) -> u64 {
        self.table.len() as u64
    }
    fn check_element(&self, g: &Permutation) -> Result<()> {
        if self.table.group.contains(g) {
            Ok(())
        } else {
            Err(Error::NotInGroup(g.to_string()))
        }
    }
    fn check_point(&self, x: &usize) -> Result<()> {
        if *x < self.table.len() {
            Ok(())
        } else {
            Err(Error::OutOfRange(format!("coset {} of {}", x + 1, self.table.len())))
        }
    }
    fn index_of(&self, x: &usize) -> u64 {
        *x as u64
    }
    fn unrank(&self, i: u64) -> usize {
        i as usize
    }
    fn image(&self, g: &Permutation, x: &usize) -> usize {
        self.table.apply(g, *x).expect("checked element")
    }
    fn render_point(&self, x: &usize) -> String {
        format!("H*{}", self.table.representatives[*x])
    }
}

struct TripleMaps {
    sigma: Vec<u32>,
    conj: Vec<u32>,
    t0inv: u32,
    ts: Vec<u32>,
}

/// `σφm` with `σ` permuting coordinates `0..=ℓ`, `φ` an ambient element
/// acting on `T` by conjugation, and `m = (t_0, …, t_ℓ)` in `T^{ℓ+1}`.
/// Applied in that order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagonalElement {
    pub sigma: Permutation,
    pub phi: Permutation,
    pub t: Vec<Permutation>,
}

impl fmt::Display for DiagonalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ts: Vec<String> = self.t.iter().map(|t| t.to_string()).collect();
        write!(f, "sigma={};phi={};t={}", self.sigma, self.phi, ts.join(","))
    }
}

/// The diagonal action on `T^ℓ`, points `[1, α_1, …, α_ℓ]` stored as the
/// indices of `α_i` among the sorted elements of `T`. Elements are the
/// permutations of the `|T|^ℓ` points realized by [`DiagonalAction::realize`].
#[derive(Clone, Debug)]
pub struct DiagonalAction {
    pub amb: AmbientAutomorphisms,
    pub ell: usize,
    mul_table: Vec<u32>,
    inv_table: Vec<u32>,
}

impl DiagonalAction {
    pub fn new(amb: AmbientAutomorphisms, ell: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::OutOfRange("diagonal action needs ell >= 1".into()));
        }
        let t = amb.target.elements();
        let n = t.len();
        let size = (n as u64).checked_pow(ell as u32).unwrap_or(u64::MAX);
        if size > DEFAULT_DOMAIN_CAP {
            return Err(Error::CapExceeded {
                what: "diagonal domain",
                cap: DEFAULT_DOMAIN_CAP,
                reached: size,
            });
        }
        let mut mul_table = vec![0u32; n * n];
        let mut inv_table = vec![0u32; n];
        for (i, x) in t.iter().enumerate() {
            for (j, y) in t.iter().enumerate() {
                let k = amb.target.index_of(&x.mul(y)).expect("closed") as u32;
                mul_table[i * n + j] = k;
                // the identity is the least element in sorted order
                if k == 0 {
                    inv_table[i] = j as u32;
                }
            }
        }
        Ok(DiagonalAction {
            amb,
            ell,
            mul_table,
            inv_table,
        })
    }

    pub fn t_order(&self) -> usize {
        self.amb.target.elements().len()
    }

    fn tmul(&self, a: u32, b: u32) -> u32 {
        self.mul_table[a as usize * self.t_order() + b as usize]
    }

    fn t_index(&self, t: &Permutation) -> Result<u32> {
        self.amb
            .target
            .index_of(t)
            .map(|i| i as u32)
            .ok_or_else(|| Error::NotInGroup(format!("{t} is not in T")))
    }

    pub fn check_triple(&self, x: &DiagonalElement) -> Result<()> {
        if x.sigma.degree() != self.ell + 1 {
            return Err(Error::Inadmissible(format!("sigma must permute {} coordinates", self.ell + 1)));
        }
        if !self.amb.ambient.contains(&x.phi) {
            return Err(Error::NotInGroup(format!("phi={} is not in the ambient group", x.phi)));
        }
        if x.t.len() != self.ell + 1 {
            return Err(Error::Inadmissible(format!("m needs {} components", self.ell + 1)));
        }
        x.t.iter().try_for_each(|t| self.t_index(t).map(|_| ()))
    }

    fn triple_maps(&self, x: &DiagonalElement) -> Result<TripleMaps> {
        self.check_triple(x)?;
        let t_elems = self.amb.target.elements();
        let phi_inv = x.phi.inverse();
        let conj = t_elems
            .iter()
            .map(|t| self.t_index(&phi_inv.mul(t).mul(&x.phi)))
            .collect::<Result<Vec<u32>>>()?;
        let ts = x.t.iter().map(|t| self.t_index(t)).collect::<Result<Vec<u32>>>()?;
        Ok(TripleMaps {
            sigma: x.sigma.images().to_vec(),
            conj,
            t0inv: self.inv_table[ts[0] as usize],
            ts,
        })
    }

    fn map_point(&self, maps: &TripleMaps, point: &[u32], beta: &mut [u32], moved: &mut [u32], out: &mut [u32]) {
        beta[0] = 0;
        beta[1..].copy_from_slice(point);
        for (i, &b) in beta.iter().enumerate() {
            moved[maps.sigma[i] as usize] = b;
        }
        let b0inv = self.inv_table[moved[0] as usize];
        for i in 0..self.ell {
            let a = maps.conj[self.tmul(b0inv, moved[i + 1]) as usize];
            out[i] = self.tmul(self.tmul(maps.t0inv, a), maps.ts[i + 1]);
        }
    }

    /// The point rule: `σ` moves coordinate `i` to `iσ` then renormalizes,
    /// `φ` conjugates each `α_i`, `m` sends `α_i` to `t_0^{-1} α_i t_i`.
    pub fn apply_triple(&self, x: &DiagonalElement, point: &[u32]) -> Result<Vec<u32>> {
        self.check_point(&point.to_vec())?;
        let maps = self.triple_maps(x)?;
        let mut beta = vec![0u32; self.ell + 1];
        let mut moved = beta.clone();
        let mut out = vec![0u32; self.ell];
        self.map_point(&maps, point, &mut beta, &mut moved, &mut out);
        Ok(out)
    }

    /// The permutation of the `|T|^ℓ` points induced by a triple.
    pub fn realize(&self, x: &DiagonalElement) -> Result<Permutation> {
        let maps = self.triple_maps(x)?;
        let n = self.domain_size();
        let mut beta = vec![0u32; self.ell + 1];
        let mut moved = beta.clone();
        let mut out = vec![0u32; self.ell];
        let mut images = Vec::with_capacity(n as usize);
        for i in 0..n {
            let p = self.unrank(i);
            self.map_point(&maps, &p, &mut beta, &mut moved, &mut out);
            images.push(self.index_of(&out.to_vec()) as u32);
        }
        Permutation::from_images(images)
    }

    pub fn identity_triple(&self) -> DiagonalElement {
        let n = self.amb.target.degree();
        DiagonalElement {
            sigma: Permutation::identity(self.ell + 1),
            phi: Permutation::identity(n),
            t: vec![Permutation::identity(n); self.ell + 1],
        }
    }

    /// Generators of `W`: translations by generators of `T` in each
    /// coordinate, ambient generators, and `Sym(ℓ+1)` generators.
    pub fn w_generator_triples(&self) -> Vec<DiagonalElement> {
        let id = self.identity_triple();
        let mut out = Vec::new();
        for i in 0..=self.ell {
            for s in self.amb.target.generators() {
                let mut x = id.clone();
                x.t[i] = s.clone();
                out.push(x);
            }
        }
        for a in self.amb.ambient.generators() {
            let mut x = id.clone();
            x.phi = a.clone();
            out.push(x);
        }
        for s in crate::groups::symmetric_generators(self.ell + 1) {
            let mut x = id.clone();
            x.sigma = s;
            out.push(x);
        }
        out
    }

    pub fn w_generators(&self) -> Result<Vec<Permutation>> {
        self.w_generator_triples().iter().map(|x| self.realize(x)).collect()
    }

    pub fn w_group(&self, cap: u64) -> Result<GeneratedGroup> {
        GeneratedGroup::closure(&self.w_generators()?, cap)
    }
}

impl Action for DiagonalAction {
    type Elem = Permutation;
    type Point = Vec<u32>;

    fn describe(&self) -> String {
        format!("diagonal:{}", self.ell)
    }
    fn domain_size(&self) -> u64 {
        (self.t_order() as u64).pow(self.ell as u32)
    }
    fn check_element(&self, g: &Permutation) -> Result<()> {
        check_perm_degree(g, self.domain_size() as usize)
    }
    fn check_point(&self, x: &Vec<u32>) -> Result<()> {
        if x.len() != self.ell {
            return Err(Error::NonCanonical(format!("expected [1,α_1..α_{}]", self.ell)));
        }
        if x.iter().any(|&a| a as usize >= self.t_order()) {
            return Err(Error::OutOfRange("coordinate outside T".into()));
        }
        Ok(())
    }
    fn index_of(&self, x: &Vec<u32>) -> u64 {
        let n = self.t_order() as u64;
        x.iter().fold(0, |acc, &a| acc * n + a as u64)
    }
    fn unrank(&self, mut i: u64) -> Vec<u32> {
        let n = self.t_order() as u64;
        let mut out = vec![0u32; self.ell];
        for slot in out.iter_mut().rev() {
            *slot = (i % n) as u32;
            i /= n;
        }
        out
    }
    fn image(&self, g: &Permutation, x: &Vec<u32>) -> Vec<u32> {
        self.unrank(g.image(self.index_of(x) as u32) as u64)
    }
    fn image_index(&self, g: &Permutation, i: u64) -> u64 {
        g.image(i as u32) as u64
    }
    fn render_point(&self, x: &Vec<u32>) -> String {
        let t = self.amb.target.elements();
        let parts: Vec<String> = x.iter().map(|&a| t[a as usize].to_string()).collect();
        format!("[1,{}]", parts.join(","))
    }
}
