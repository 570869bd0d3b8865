//! Permutations of `{0..n}` (rendered 1-based), cycle types and integer
//! partitions.

use std::fmt;

use crate::arith::lcm;
use crate::error::{Error, Result};

/// A bijection of `{0..n}` stored as its image sequence.
///
/// Products follow the right-action convention used for permutation groups:
/// `x^(pq) = (x^p)^q`, so `p.mul(&q)` applies `p` first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            let v = v as usize;
            if v >= n {
                return Err(Error::InvalidPermutation(format!("image {} out of range", v + 1)));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("image {} repeated", v + 1)));
            }
            seen[v] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Builds a permutation from 1-based images.
    pub fn from_one_based(images: &[u32]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation("point 0 in 1-based images".into()));
        }
        Self::from_images(images.iter().map(|&v| v - 1).collect())
    }

    /// Builds a permutation from disjoint 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                let xi = x as usize;
                if xi >= degree {
                    return Err(Error::OutOfRange(format!("point {} exceeds degree {degree}", x + 1)));
                }
                if used[xi] {
                    return Err(Error::Parse(format!("point {} repeated", x + 1)));
                }
                used[xi] = true;
                images[xi] = c[(i + 1) % c.len()];
            }
        }
        Ok(Permutation { images })
    }

    /// Parses cycle notation such as `"(1 2 3)(4 5)"` or `"(1,2)"`.
    ///
    /// Points are 1-based; omitted points are fixed; the empty string and
    /// `"()"` both denote the identity.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut current: Option<Vec<u32>> = None;
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i];
            match c {
                b'(' => {
                    if current.is_some() {
                        return Err(Error::Parse(format!("nested '(' at offset {i}")));
                    }
                    current = Some(Vec::new());
                    i += 1;
                }
                b')' => match current.take() {
                    Some(cyc) => {
                        cycles.push(cyc);
                        i += 1;
                    }
                    None => return Err(Error::Parse(format!("unmatched ')' at offset {i}"))),
                },
                b' ' | b'\t' | b'\n' | b'\r' | b',' => {
                    if c == b',' && current.is_none() {
                        return Err(Error::Parse(format!("',' outside a cycle at offset {i}")));
                    }
                    i += 1;
                }
                b'0'..=b'9' => {
                    let start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    let cyc = current
                        .as_mut()
                        .ok_or_else(|| Error::Parse(format!("point outside a cycle at offset {start}")))?;
                    let v: u64 = text[start..i]
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad number at offset {start}")))?;
                    if v == 0 || v > degree as u64 {
                        return Err(Error::OutOfRange(format!("point {v} not in 1..{degree}")));
                    }
                    cyc.push((v - 1) as u32);
                }
                _ => {
                    return Err(Error::Parse(format!(
                        "unexpected character {:?} at offset {i}",
                        c as char
                    )))
                }
            }
        }
        if current.is_some() {
            return Err(Error::Parse("unclosed '('".into()));
        }
        Self::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn image(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in product");
        Permutation {
            images: self.images.iter().map(|&v| other.images[v as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `x^{-1} self x`.
    pub fn conjugate_by(&self, x: &Permutation) -> Permutation {
        x.inverse().mul(self).mul(x)
    }

    /// Power computed cycle by cycle.
    pub fn pow(&self, e: u64) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for cyc in self.cycles_with_fixed() {
            let len = cyc.len() as u64;
            let shift = (e % len) as usize;
            for (i, &x) in cyc.iter().enumerate() {
                images[x as usize] = cyc[(i + shift) % cyc.len()];
            }
        }
        Permutation { images }
    }

    /// All cycles, each starting at its least point, ordered by least point.
    pub fn cycles_with_fixed(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start as u32;
            while !seen[x as usize] {
                seen[x as usize] = true;
                cyc.push(x);
                x = self.images[x as usize];
            }
            out.push(cyc);
        }
        out
    }

    /// Cycles of length at least two, in canonical order.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        self.cycles_with_fixed().into_iter().filter(|c| c.len() > 1).collect()
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_parts(self.cycles_with_fixed().iter().map(|c| c.len() as u64).collect())
            .expect("cycle lengths are positive")
    }

    pub fn order(&self) -> u64 {
        self.cycles_with_fixed().iter().fold(1, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Order and cycle type together.
    pub fn order_and_type(&self) -> (u64, CycleType) {
        let ct = self.cycle_type();
        (ct.order(), ct)
    }

    pub fn support_size(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, &v)| *i as u32 != v).count()
    }

    /// Image of `x` under the `e`-th power without forming the power.
    pub fn apply_pow(&self, mut x: u32, e: u64) -> u32 {
        for _ in 0..e {
            x = self.images[x as usize];
        }
        x
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// Multiset of cycle lengths, fixed points included, non-increasing.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CycleType {
    parts: Vec<u64>,
}

impl CycleType {
    pub fn from_parts(mut parts: Vec<u64>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::OutOfRange("cycle lengths must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(CycleType { parts })
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn degree(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn order(&self) -> u64 {
        self.parts.iter().fold(1, |a, &p| lcm(a, p))
    }

    /// Parts greater than one.
    pub fn nontrivial(&self) -> impl Iterator<Item = u64> + '_ {
        self.parts.iter().copied().filter(|&p| p > 1)
    }

    /// Standard representative: consecutive runs `(1..l1)(l1+1..)` in part order.
    pub fn representative(&self) -> Permutation {
        let n = self.degree() as usize;
        let mut images = vec![0u32; n];
        let mut start = 0usize;
        for &len in &self.parts {
            let len = len as usize;
            for i in 0..len {
                images[start + i] = (start + (i + 1) % len) as u32;
            }
            start += len;
        }
        Permutation::from_images_unchecked(images)
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Integer partitions of `m` as non-increasing sequences, in reverse
/// lexicographic order (`[m]` first, `[1,…,1]` last).
pub struct Partitions {
    current: Option<Vec<u64>>,
}

pub fn partitions(m: u64) -> Partitions {
    Partitions {
        current: if m == 0 { Some(Vec::new()) } else { Some(vec![m]) },
    }
}

impl Iterator for Partitions {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.current.take()?;
        // successor: strip trailing ones, decrement the last part > 1,
        // then refill greedily with copies of the new value
        let mut next = out.clone();
        let mut ones = 0u64;
        while next.last() == Some(&1) {
            next.pop();
            ones += 1;
        }
        if let Some(last) = next.pop() {
            let v = last - 1;
            let mut rest = ones + 1 + v;
            while rest > 0 {
                let take = v.min(rest);
                next.push(take);
                rest -= take;
            }
            self.current = Some(next);
        }
        Some(out)
    }
}

/// All permutations of degree `n` in lexicographic image order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut a: Vec<u32> = (0..n as u32).collect();
    loop {
        out.push(Permutation::from_images_unchecked(a.clone()));
        // next lexicographic permutation
        let mut i = n;
        while i > 1 && a[i - 2] >= a[i - 1] {
            i -= 1;
        }
        if i <= 1 {
            break;
        }
        let pivot = i - 2;
        let mut j = n - 1;
        while a[j] <= a[pivot] {
            j -= 1;
        }
        a.swap(pivot, j);
        a[pivot + 1..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let p = Permutation::parse("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p, Permutation::from_one_based(&[2, 3, 1, 5, 4]).unwrap());
        assert_eq!(Permutation::parse("", 4).unwrap(), Permutation::identity(4));
        assert_eq!(Permutation::parse("()", 4).unwrap(), Permutation::identity(4));
        let g = Permutation::parse("(1 2 3)(4 5)(6 7)", 7).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(Permutation::parse("(1,2,3) (4, 5)", 5).unwrap(), p);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Permutation::parse("(1 2 1)", 3), Err(Error::Parse(_))));
        assert!(matches!(Permutation::parse("(1 2)(2 3)", 3), Err(Error::Parse(_))));
        assert!(matches!(Permutation::parse("(1 4)", 3), Err(Error::OutOfRange(_))));
        assert!(matches!(Permutation::parse("(0 1)", 3), Err(Error::OutOfRange(_))));
        assert!(matches!(Permutation::parse("(1 2", 3), Err(Error::Parse(_))));
        assert!(matches!(Permutation::parse("1 2)", 3), Err(Error::Parse(_))));
        assert!(matches!(Permutation::parse("((1 2))", 3), Err(Error::Parse(_))));
        assert!(matches!(Permutation::parse("(1 x)", 3), Err(Error::Parse(_))));
    }

    #[test]
    fn order_and_type_examples() {
        let (o, ct) = Permutation::parse("(1 2 3)(4 5)", 5).unwrap().order_and_type();
        assert_eq!((o, ct.parts()), (6, &[3, 2][..]));
        let (o, ct) = Permutation::identity(4).order_and_type();
        assert_eq!((o, ct.parts()), (1, &[1, 1, 1, 1][..]));
        let g = Permutation::parse("(1 2)(3 4 5)(6 7 8 9 10)", 10).unwrap();
        let (o, ct) = g.order_and_type();
        assert_eq!((o, ct.to_string()), (30, "[5,3,2]".to_string()));
    }

    #[test]
    fn partitions_counts_and_order() {
        let counts: Vec<usize> = (1..=12).map(|m| partitions(m).count()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77]);
        let p4: Vec<Vec<u64>> = partitions(4).collect();
        assert_eq!(
            p4,
            vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]
        );
        for m in 1..=15 {
            let ps: Vec<Vec<u64>> = partitions(m).collect();
            assert!(ps.windows(2).all(|w| w[0] > w[1]));
            assert!(ps.iter().all(|p| p.iter().sum::<u64>() == m));
        }
    }

    #[test]
    fn all_permutations_is_sym() {
        let s4 = all_permutations(4);
        assert_eq!(s4.len(), 24);
        assert!(s4.windows(2).all(|w| w[0] < w[1]));
    }

    fn arb_perm(max_deg: usize) -> impl Strategy<Value = Permutation> {
        (1..=max_deg).prop_flat_map(|n| {
            Just((0..n as u32).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(v).unwrap())
        })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(p in arb_perm(64)) {
            let text = p.to_string();
            prop_assert_eq!(Permutation::parse(&text, p.degree()).unwrap(), p);
        }

        #[test]
        fn inverse_cancels(p in arb_perm(64)) {
            prop_assert!(p.mul(&p.inverse()).is_identity());
            prop_assert!(p.inverse().mul(&p).is_identity());
        }

        #[test]
        fn pow_matches_repeated_product(p in arb_perm(20), e in 0u64..50) {
            let mut acc = Permutation::identity(p.degree());
            for _ in 0..e { acc = acc.mul(&p); }
            prop_assert_eq!(p.pow(e), acc);
            prop_assert!(p.pow(p.order()).is_identity());
        }

        #[test]
        fn disjoint_commuting_orders(a in arb_perm(10), b in arb_perm(10)) {
            // embed on disjoint supports in degree a+b
            let n = a.degree() + b.degree();
            let mut ia: Vec<u32> = (0..n as u32).collect();
            let mut ib = ia.clone();
            for i in 0..a.degree() { ia[i] = a.image(i as u32); }
            for i in 0..b.degree() { ib[a.degree() + i] = b.image(i as u32) + a.degree() as u32; }
            let pa = Permutation::from_images(ia).unwrap();
            let pb = Permutation::from_images(ib).unwrap();
            prop_assert_eq!(pa.mul(&pb), pb.mul(&pa));
            let l = crate::arith::lcm(pa.order(), pb.order());
            prop_assert_eq!(l % pa.mul(&pb).order(), 0);
        }
    }
}
