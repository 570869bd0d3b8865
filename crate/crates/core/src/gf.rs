//! Small finite fields `GF(q)`, matrices over them with the row-vector
//! convention `w -> w·M`, affine maps, and semilinear maps of the
//! projective line.
//!
//! Field elements are `u8` codes: the element `a_0 + a_1 x + … + a_{e-1} x^{e-1}`
//! of `GF(p)[x]/(f)` is encoded as `a_0 + a_1 p + … + a_{e-1} p^{e-1}`.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Field orders with a built-in representation.
pub const SUPPORTED_Q: [u64; 9] = [2, 3, 4, 5, 7, 8, 9, 11, 13];

/// `GF(p^e)` with precomputed operation tables.
pub struct Field {
    pub p: u8,
    pub e: u32,
    pub q: u8,
    /// Monic modulus, constant coefficient first; `[0, 1]` for prime fields.
    pub modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    frob: Vec<u8>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.q)
    }
}

fn modulus_for(q: u64) -> Option<(u8, u32, Vec<u8>)> {
    Some(match q {
        2 | 3 | 5 | 7 | 11 | 13 => (q as u8, 1, vec![0, 1]),
        4 => (2, 2, vec![1, 1, 1]),
        8 => (2, 3, vec![1, 1, 0, 1]),
        9 => (3, 2, vec![1, 0, 1]),
        _ => return None,
    })
}

/// Evaluates the polynomial with coefficients `coeffs` at `x` mod `p`.
fn eval_mod_p(coeffs: &[u8], x: u32, p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| (acc * x + c as u32) % p)
}

impl Field {
    /// The shared field of order `q`.
    pub fn get(q: u64) -> Result<&'static Field> {
        static FIELDS: [OnceLock<Field>; 14] = [const { OnceLock::new() }; 14];
        if !SUPPORTED_Q.contains(&q) {
            return Err(Error::UnsupportedField(q));
        }
        Ok(FIELDS[q as usize].get_or_init(|| Field::build(q).expect("supported field")))
    }

    fn build(q: u64) -> Result<Field> {
        let (p, e, modulus) = modulus_for(q).ok_or(Error::UnsupportedField(q))?;
        // degree 2 and 3 moduli are irreducible iff they have no root
        if e > 1 && (0..p as u32).any(|x| eval_mod_p(&modulus, x, p as u32) == 0) {
            return Err(Error::Precondition(format!("modulus for q={q} is reducible")));
        }
        let qn = q as usize;
        let pu = p as u32;
        let digits = |a: usize| -> Vec<u32> {
            let mut v = Vec::with_capacity(e as usize);
            let mut a = a as u32;
            for _ in 0..e {
                v.push(a % pu);
                a /= pu;
            }
            v
        };
        let encode = |d: &[u32]| -> u8 {
            d.iter().rev().fold(0u32, |acc, &c| acc * pu + c) as u8
        };
        let mut add = vec![0u8; qn * qn];
        let mut mul = vec![0u8; qn * qn];
        for a in 0..qn {
            let da = digits(a);
            for b in 0..qn {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % pu).collect();
                add[a * qn + b] = encode(&s);
                // schoolbook product then reduction by the monic modulus
                let mut prod = vec![0u32; 2 * e as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % pu;
                    }
                }
                for deg in (e as usize..prod.len()).rev() {
                    let c = prod[deg];
                    if c != 0 {
                        for (k, &m) in modulus.iter().enumerate().take(e as usize) {
                            let idx = deg - e as usize + k;
                            prod[idx] = (prod[idx] + pu * pu - c * m as u32 % pu) % pu;
                        }
                        prod[deg] = 0;
                    }
                }
                mul[a * qn + b] = encode(&prod[..e as usize]);
            }
        }
        let mut neg = vec![0u8; qn];
        let mut inv = vec![0u8; qn];
        for a in 0..qn {
            for b in 0..qn {
                if add[a * qn + b] == 0 {
                    neg[a] = b as u8;
                }
                if mul[a * qn + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        let mut frob = vec![0u8; qn];
        for (a, f) in frob.iter_mut().enumerate() {
            let mut acc = 1u8;
            for _ in 0..p {
                acc = mul[acc as usize * qn + a];
            }
            *f = acc;
        }
        Ok(Field {
            p,
            e,
            q: q as u8,
            modulus,
            add,
            mul,
            neg,
            inv,
            frob,
        })
    }

    pub fn order(&self) -> u64 {
        self.q as u64
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.q
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg(b))
    }

    pub fn inv(&self, a: u8) -> Result<u8> {
        if a == 0 {
            return Err(Error::Precondition("inverse of zero".into()));
        }
        Ok(self.inv[a as usize])
    }

    pub fn pow(&self, a: u8, e: u64) -> u8 {
        let mut acc = 1u8;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    /// `a -> a^p`.
    #[inline]
    pub fn frobenius(&self, a: u8) -> u8 {
        self.frob[a as usize]
    }

    pub fn frobenius_pow(&self, a: u8, k: u32) -> u8 {
        (0..k).fold(a, |x, _| self.frobenius(x))
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: u8) -> u64 {
        assert!(a != 0);
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least code generating the multiplicative group.
    pub fn primitive_element(&self) -> u8 {
        (1..self.q)
            .find(|&a| self.mult_order(a) == self.q as u64 - 1)
            .expect("finite fields are cyclic")
    }

    pub fn is_square(&self, a: u8) -> bool {
        a == 0 || (1..self.q).any(|x| self.mul(x, x) == a)
    }
}

/// A matrix over a supported field.
#[derive(Clone)]
pub struct Matrix {
    field: &'static Field,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.field.q == other.field.q
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl Eq for Matrix {}

impl Hash for Matrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.q.hash(state);
        self.rows.hash(state);
        self.data.hash(state);
    }
}

impl Matrix {
    pub fn new(field: &'static Field, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::Shape(format!("{rows}x{cols} matrix with {} entries", data.len())));
        }
        if let Some(&bad) = data.iter().find(|&&x| x >= field.q) {
            return Err(Error::OutOfRange(format!("entry {bad} not in GF({})", field.q)));
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn from_rows(field: &'static Field, rows: &[Vec<u8>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Self::new(field, r, c, rows.concat())
    }

    pub fn identity(field: &'static Field, n: usize) -> Self {
        let mut data = vec![0u8; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Matrix {
            field,
            rows: n,
            cols: n,
            data,
        }
    }

    pub fn scalar(field: &'static Field, n: usize, s: u8) -> Self {
        let mut m = Self::identity(field, n);
        for i in 0..n {
            m.data[i * n + i] = s;
        }
        m
    }

    pub fn field(&self) -> &'static Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> &[u8] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows || self.field.q != other.field.q {
            return Err(Error::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut data = vec![0u8; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    data[idx] = f.add(data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(Matrix {
            field: f,
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, w: &[u8]) -> Result<Vec<u8>> {
        if w.len() != self.rows {
            return Err(Error::Shape(format!("vector of length {} against {} rows", w.len(), self.rows)));
        }
        let f = self.field;
        let mut out = vec![0u8; self.cols];
        for (i, &wi) in w.iter().enumerate() {
            if wi == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(wi, self.get(i, j)));
            }
        }
        Ok(out)
    }

    /// Row-reduced echelon form and rank.
    fn echelon(&self) -> (Vec<u8>, usize) {
        let f = self.field;
        let (r, c) = (self.rows, self.cols);
        let mut a = self.data.clone();
        let mut rank = 0;
        for col in 0..c {
            let Some(piv) = (rank..r).find(|&i| a[i * c + col] != 0) else {
                continue;
            };
            for j in 0..c {
                a.swap(rank * c + j, piv * c + j);
            }
            let inv = f.inv(a[rank * c + col]).expect("pivot nonzero");
            for j in 0..c {
                a[rank * c + j] = f.mul(a[rank * c + j], inv);
            }
            for i in 0..r {
                if i != rank && a[i * c + col] != 0 {
                    let factor = a[i * c + col];
                    for j in 0..c {
                        let v = f.mul(factor, a[rank * c + j]);
                        a[i * c + j] = f.sub(a[i * c + j], v);
                    }
                }
            }
            rank += 1;
            if rank == r {
                break;
            }
        }
        (a, rank)
    }

    pub fn rank(&self) -> usize {
        self.echelon().1
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        // reduce [M | I]
        let mut aug = vec![0u8; n * 2 * n];
        for i in 0..n {
            for j in 0..n {
                aug[i * 2 * n + j] = self.get(i, j);
            }
            aug[i * 2 * n + n + i] = 1;
        }
        let big = Matrix {
            field: self.field,
            rows: n,
            cols: 2 * n,
            data: aug,
        };
        let (red, _) = big.echelon();
        for i in 0..n {
            for j in 0..n {
                if red[i * 2 * n + j] != u8::from(i == j) {
                    return Err(Error::Singular);
                }
            }
        }
        let data = (0..n)
            .flat_map(|i| red[i * 2 * n + n..(i + 1) * 2 * n].to_vec())
            .collect();
        Ok(Matrix {
            field: self.field,
            rows: n,
            cols: n,
            data,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| self.get(i, j) == u8::from(i == j)))
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("square");
            }
            base = base.mul(&base).expect("square");
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order of an invertible matrix.
    pub fn order(&self) -> u64 {
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.mul(self).expect("square");
            k += 1;
        }
        k
    }

    /// Entrywise Frobenius `a -> a^p`.
    pub fn frobenius(&self) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| self.field.frobenius(a)).collect(),
        }
    }

    /// Every invertible `d x d` matrix, in lexicographic entry order.
    pub fn general_linear(field: &'static Field, d: usize) -> Vec<Matrix> {
        let q = field.q as u64;
        let total = q.pow((d * d) as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut data = vec![0u8; d * d];
            let mut c = code;
            for slot in data.iter_mut().rev() {
                *slot = (c % q) as u8;
                c /= q;
            }
            let m = Matrix {
                field,
                rows: d,
                cols: d,
                data,
            };
            if m.is_invertible() {
                out.push(m);
            }
        }
        out
    }

    /// Parses `[[a,b],[c,d]]` with entries given as field codes.
    pub fn parse(text: &str, field: &'static Field) -> Result<Matrix> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = t
            .strip_prefix("[[")
            .and_then(|s| s.strip_suffix("]]"))
            .ok_or_else(|| Error::Parse(format!("matrix must look like [[..],[..]]: {text}")))?;
        let rows = inner
            .split("],[")
            .map(|r| parse_vector_body(r, field))
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(field, &rows)
    }
}

fn parse_vector_body(body: &str, field: &'static Field) -> Result<Vec<u8>> {
    body.split(',')
        .map(|x| {
            let v: u64 = x
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad field element {x:?}")))?;
            if v >= field.q as u64 {
                return Err(Error::OutOfRange(format!("{v} not in GF({})", field.q)));
            }
            Ok(v as u8)
        })
        .collect()
}

/// Parses `[a,b,…]` as a vector over `field`.
pub fn parse_vector(text: &str, field: &'static Field) -> Result<Vec<u8>> {
    let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let body = t
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("vector must look like [..]: {text}")))?;
    parse_vector_body(body, field)
}

pub fn format_vector(v: &[u8]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", format_vector(&self.data[i * self.cols..(i + 1) * self.cols]))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}){}", self.field.q, self)
    }
}

/// `w -> w·linear + translation`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineMap {
    pub linear: Matrix,
    pub translation: Vec<u8>,
}

impl AffineMap {
    pub fn new(linear: Matrix, translation: Vec<u8>) -> Result<Self> {
        if !linear.is_square() || translation.len() != linear.rows() {
            return Err(Error::Shape("affine map needs a square matrix and matching vector".into()));
        }
        if !linear.is_invertible() {
            return Err(Error::Singular);
        }
        Ok(AffineMap {
            linear,
            translation,
        })
    }

    pub fn dim(&self) -> usize {
        self.linear.rows()
    }

    pub fn field(&self) -> &'static Field {
        self.linear.field()
    }

    pub fn apply(&self, w: &[u8]) -> Result<Vec<u8>> {
        let f = self.field();
        let mut out = self.linear.apply_row(w)?;
        for (o, &t) in out.iter_mut().zip(&self.translation) {
            *o = f.add(*o, t);
        }
        Ok(out)
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &AffineMap) -> AffineMap {
        let f = self.field();
        let linear = self.linear.mul(&other.linear).expect("same dimension");
        let mut translation = other.linear.apply_row(&self.translation).expect("same dimension");
        for (t, &u) in translation.iter_mut().zip(&other.translation) {
            *t = f.add(*t, u);
        }
        AffineMap {
            linear,
            translation,
        }
    }

    pub fn identity(field: &'static Field, d: usize) -> AffineMap {
        AffineMap {
            linear: Matrix::identity(field, d),
            translation: vec![0; d],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.iter().all(|&t| t == 0)
    }

    /// The block matrix `[[linear, 0], [translation, 1]]` of size `d+1`.
    pub fn embed(&self) -> Matrix {
        let d = self.dim();
        let n = d + 1;
        let mut data = vec![0u8; n * n];
        for i in 0..d {
            for j in 0..d {
                data[i * n + j] = self.linear.get(i, j);
            }
        }
        data[d * n..d * n + d].copy_from_slice(&self.translation);
        data[d * n + d] = 1;
        Matrix::new(self.field(), n, n, data).expect("valid block matrix")
    }

    pub fn pow(&self, e: u64) -> AffineMap {
        let m = self.embed().pow(e);
        Self::from_embedded(&m)
    }

    fn from_embedded(m: &Matrix) -> AffineMap {
        let n = m.rows();
        let d = n - 1;
        let data = (0..d).flat_map(|i| (0..d).map(move |j| (i, j))).map(|(i, j)| m.get(i, j)).collect();
        AffineMap {
            linear: Matrix::new(m.field(), d, d, data).expect("block"),
            translation: (0..d).map(|j| m.get(d, j)).collect(),
        }
    }

    pub fn order(&self) -> u64 {
        self.embed().order()
    }

    /// Every element of `AGL_d(q)`: linear parts in `GL` order, translations in base-q order.
    pub fn affine_general_linear(field: &'static Field, d: usize) -> Vec<AffineMap> {
        let vs = all_vectors(field, d);
        Matrix::general_linear(field, d)
            .into_iter()
            .flat_map(|m| {
                vs.iter().map(move |v| AffineMap {
                    linear: m.clone(),
                    translation: v.clone(),
                })
            })
            .collect()
    }

    /// Parses `[[..],[..]]+[..]`.
    pub fn parse(text: &str, field: &'static Field) -> Result<AffineMap> {
        let (m, v) = text
            .split_once('+')
            .ok_or_else(|| Error::Parse(format!("affine map must be <matrix>+<vector>: {text}")))?;
        AffineMap::new(Matrix::parse(m, field)?, parse_vector(v, field)?)
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}", self.linear, format_vector(&self.translation))
    }
}

/// All vectors of `GF(q)^d`, first coordinate most significant.
pub fn all_vectors(field: &'static Field, d: usize) -> Vec<Vec<u8>> {
    let q = field.q as u64;
    (0..q.pow(d as u32)).map(|i| vector_from_index(i, q, d)).collect()
}

pub fn vector_from_index(mut i: u64, q: u64, d: usize) -> Vec<u8> {
    let mut v = vec![0u8; d];
    for slot in v.iter_mut().rev() {
        *slot = (i % q) as u8;
        i /= q;
    }
    v
}

pub fn vector_index(v: &[u8], q: u64) -> u64 {
    v.iter().fold(0, |acc, &x| acc * q + x as u64)
}

/// `x -> (x·matrix)^{frobenius^k}` on the projective line.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SemilinearMap {
    pub matrix: Matrix,
    pub frobenius_power: u32,
}

impl SemilinearMap {
    pub fn new(matrix: Matrix, frobenius_power: u32) -> Result<Self> {
        if matrix.rows() != 2 || !matrix.is_square() {
            return Err(Error::Shape("semilinear maps act on the projective line".into()));
        }
        if !matrix.is_invertible() {
            return Err(Error::Singular);
        }
        if frobenius_power >= matrix.field().e {
            return Err(Error::OutOfRange(format!(
                "frobenius power {frobenius_power} must be below {}",
                matrix.field().e
            )));
        }
        Ok(SemilinearMap {
            matrix,
            frobenius_power,
        })
    }

    pub fn linear(matrix: Matrix) -> Result<Self> {
        Self::new(matrix, 0)
    }
}

/// The projective line `PG(1,q)`: point `x` for `(1,x)` with `x` in `GF(q)`,
/// point `q` for `(0,1)`.
#[derive(Clone, Copy, Debug)]
pub struct ProjectiveLine {
    pub field: &'static Field,
}

impl ProjectiveLine {
    pub fn new(q: u64) -> Result<Self> {
        Ok(ProjectiveLine {
            field: Field::get(q)?,
        })
    }

    pub fn size(&self) -> usize {
        self.field.q as usize + 1
    }

    pub fn point(&self, index: usize) -> [u8; 2] {
        if index < self.field.q as usize {
            [1, index as u8]
        } else {
            [0, 1]
        }
    }

    pub fn normalize(&self, v: [u8; 2]) -> Result<usize> {
        let f = self.field;
        if v[0] != 0 {
            Ok(f.mul(v[1], f.inv(v[0])?) as usize)
        } else if v[1] != 0 {
            Ok(f.q as usize)
        } else {
            Err(Error::Precondition("zero vector is not a projective point".into()))
        }
    }

    pub fn apply(&self, map: &SemilinearMap, index: usize) -> Result<usize> {
        let img = map.matrix.apply_row(&self.point(index))?;
        let f = self.field;
        let img = [
            f.frobenius_pow(img[0], map.frobenius_power),
            f.frobenius_pow(img[1], map.frobenius_power),
        ];
        self.normalize(img)
    }

    /// The permutation induced on the `q+1` points.
    pub fn permutation(&self, map: &SemilinearMap) -> Result<Permutation> {
        if map.matrix.field().q != self.field.q {
            return Err(Error::Shape("field mismatch".into()));
        }
        let images = (0..self.size())
            .map(|i| self.apply(map, i).map(|j| j as u32))
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(images)
    }

    pub fn matrix_permutation(&self, m: &Matrix) -> Result<Permutation> {
        self.permutation(&SemilinearMap::linear(m.clone())?)
    }
}
