use std::collections::HashSet;

use rayon::prelude::*;

use super::{certify, Method, Verdict};
use crate::actions::KSetAction;
use crate::arith::{factorize, nk_threshold};
use crate::error::{Error, Result};
use crate::perm::{partitions, CycleType, Permutation};

/// Which construction applies for `k` against `ℓ = Σ ℓ_i` over the chosen
/// cycles and `s` = their number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum KSetCase {
    KLeqEllMinusS,
    KGtWithRoom,
    Impossible,
}

impl KSetCase {
    pub fn as_str(self) -> &'static str {
        match self {
            KSetCase::KLeqEllMinusS => "kLEQ_ell_minus_s",
            KSetCase::KGtWithRoom => "k_GT_with_room",
            KSetCase::Impossible => "impossible",
        }
    }
}

/// A minimum-size set of distinct cycle lengths whose lcm is the order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinCover {
    /// Chosen lengths, ascending.
    pub lengths: Vec<u64>,
    /// For each chosen length, the first index in the cycle type carrying it.
    pub indices: Vec<usize>,
}

impl MinCover {
    pub fn s(&self) -> usize {
        self.lengths.len()
    }
    pub fn ell(&self) -> u64 {
        self.lengths.iter().sum()
    }
}

/// Exact set cover over the maximal prime powers of `lcm(parts)`; among
/// minimum covers the lexicographically smallest ascending length list wins.
pub fn min_cover(ct: &CycleType) -> Result<MinCover> {
    let order = ct.order();
    let powers = factorize(order)?.prime_powers();
    let r = powers.len();
    if r > 20 {
        return Err(Error::OutOfRange(format!("{r} prime powers in the order")));
    }
    let mut lengths: Vec<u64> = ct.parts().iter().copied().filter(|&l| l > 1).collect();
    lengths.sort_unstable();
    lengths.dedup();
    let covers: Vec<u32> = lengths
        .iter()
        .map(|&l| {
            powers
                .iter()
                .enumerate()
                .filter(|(_, &q)| l % q == 0)
                .fold(0u32, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let full = (1u32 << r) - 1;
    // need[mask]: fewest lengths covering mask
    let mut need = vec![u8::MAX; 1 << r];
    need[0] = 0;
    for mask in 1..=full {
        let low = mask & mask.wrapping_neg();
        let best = covers
            .iter()
            .filter(|&&c| c & low != 0)
            .map(|&c| need[(mask & !c) as usize])
            .min()
            .unwrap_or(u8::MAX);
        need[mask as usize] = best.saturating_add(1);
    }
    let s = need[full as usize] as usize;
    let mut chosen = Vec::with_capacity(s);
    if !search(&covers, &need, full, s, 0, &mut chosen) {
        return Err(Error::Certification("min cover search failed".into()));
    }
    let lengths: Vec<u64> = chosen.iter().map(|&i| lengths[i]).collect();
    let indices = lengths
        .iter()
        .map(|l| ct.parts().iter().position(|p| p == l).expect("length present"))
        .collect();
    Ok(MinCover { lengths, indices })
}

fn search(covers: &[u32], need: &[u8], remaining: u32, s: usize, from: usize, chosen: &mut Vec<usize>) -> bool {
    if remaining == 0 {
        return chosen.len() == s;
    }
    let depth = chosen.len();
    if depth == s {
        return false;
    }
    for i in from..covers.len() {
        let rest = remaining & !covers[i];
        if rest == remaining || need[rest as usize] as usize > s - depth - 1 {
            continue;
        }
        chosen.push(i);
        if search(covers, need, rest, s, i + 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Result of the k-set rule for one cycle type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KSetDecision {
    pub cycle_type: CycleType,
    pub k: usize,
    pub min_cover_s: usize,
    /// Indices into `cycle_type.parts()`.
    pub chosen_cycles: Vec<usize>,
    pub case_tag: KSetCase,
}

impl KSetDecision {
    pub fn has_regular_cycle(&self) -> bool {
        self.case_tag != KSetCase::Impossible
    }

    pub fn chosen_lengths(&self) -> Vec<u64> {
        self.chosen_cycles.iter().map(|&i| self.cycle_type.parts()[i]).collect()
    }

    /// A witness-free verdict for the cycle type.
    pub fn verdict(&self) -> Verdict {
        let order = self.cycle_type.order();
        Verdict {
            element: format!("type:{}", self.cycle_type),
            action: format!("ksets:{}", self.k),
            order,
            induced_order: order,
            has_regular_cycle: self.has_regular_cycle(),
            witness: None,
            witness_index: None,
            method: Method::KsetCombinatorial,
            certified: false,
            flags: Vec::new(),
            induced_cycle_type: None,
        }
    }
}

/// The cycle type has a regular k-set cycle iff at most `k` cycle lengths
/// already reach the order.
pub fn kset_decide(ct: &CycleType, k: usize) -> Result<KSetDecision> {
    let m = ct.degree() as usize;
    if k == 0 || 2 * k > m {
        return Err(Error::OutOfRange(format!("k={k} must satisfy 1 <= k <= m/2 with m={m}")));
    }
    let cover = min_cover(ct)?;
    let s = cover.s();
    let ell = cover.ell() as usize;
    let case_tag = if s > k {
        KSetCase::Impossible
    } else if k <= ell - s {
        KSetCase::KLeqEllMinusS
    } else {
        KSetCase::KGtWithRoom
    };
    Ok(KSetDecision {
        cycle_type: ct.clone(),
        k,
        min_cover_s: s,
        chosen_cycles: cover.indices,
        case_tag,
    })
}

/// Cycles of `g` realizing the min cover, ascending by length; for each
/// length the cycle with the least point, in cycle order from that point.
pub(crate) fn chosen_cycles(g: &Permutation, cover: &MinCover) -> Vec<Vec<u32>> {
    let cycles = g.cycles_with_fixed();
    cover
        .lengths
        .iter()
        .map(|&l| cycles.iter().find(|c| c.len() as u64 == l).expect("length present").clone())
        .collect()
}

/// A k-set on a regular cycle of `g`, following the two constructions.
pub fn kset_witness(g: &Permutation, k: usize) -> Result<Vec<u32>> {
    let m = g.degree();
    if k == 0 || k >= m.max(2) {
        return Err(Error::OutOfRange(format!("k={k} must satisfy 1 <= k < m={m}")));
    }
    let action = KSetAction::new(m, k)?;
    if 2 * k > m {
        let dual = kset_witness(g, m - k)?;
        let x = KSetAction::new(m, m - k)?.complement(&dual);
        certify(&action, g, &x)?;
        return Ok(x);
    }
    let ct = g.cycle_type();
    let decision = kset_decide(&ct, k)?;
    if !decision.has_regular_cycle() {
        return Err(Error::Precondition(format!("type {ct} has no regular cycle on {k}-sets")));
    }
    let cover = min_cover(&ct)?;
    let cycles = chosen_cycles(g, &cover);
    let s = cycles.len();
    let ell: usize = cycles.iter().map(Vec::len).sum();
    let mut x = Vec::with_capacity(k);
    if k <= ell - s {
        let mut extra = k - s;
        for c in &cycles {
            let take = 1 + extra.min(c.len() - 2);
            extra -= take - 1;
            x.extend_from_slice(&c[..take]);
        }
    } else {
        let mut support = HashSet::new();
        for c in &cycles {
            x.extend_from_slice(&c[..c.len() - 1]);
            support.extend(c.iter().copied());
        }
        let pad = k - (ell - s);
        x.extend((0..m as u32).filter(|p| !support.contains(p)).take(pad));
    }
    x.sort_unstable();
    if x.len() != k {
        return Err(Error::Certification(format!("constructed {} points, wanted {k}", x.len())));
    }
    certify(&action, g, &x)?;
    Ok(x)
}

/// Cycle types of `Sym(m)` with no regular k-set cycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub m: usize,
    pub k: usize,
    pub threshold: u64,
    pub failing: Vec<CycleType>,
}

impl ScanReport {
    /// Failures occur exactly from the threshold on.
    pub fn consistent(&self) -> bool {
        self.failing.is_empty() == ((self.m as u64) < self.threshold)
    }
}

pub fn ksets_theorem_scan(m: usize, k: usize) -> Result<ScanReport> {
    if k == 0 || m < 2 * k {
        return Err(Error::OutOfRange(format!("scan needs m >= 2k, got m={m}, k={k}")));
    }
    if m > 60 {
        return Err(Error::OutOfRange(format!("m={m} exceeds the partition enumeration limit 60")));
    }
    let types: Vec<Vec<u64>> = partitions(m as u64).collect();
    let failing = types
        .into_par_iter()
        .map(|parts| {
            let ct = CycleType::from_parts(parts)?;
            let d = kset_decide(&ct, k)?;
            Ok((!d.has_regular_cycle()).then_some(ct))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    Ok(ScanReport {
        m,
        k,
        threshold: nk_threshold(k as u64),
        failing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::actions::Action;
    use num_integer::Integer;
    use crate::regcycle::{decide_bruteforce, orbit_length, DEFAULT_CAP};

    fn lcm_of(xs: &[u64]) -> u64 {
        xs.iter().fold(1, |a, b| a.lcm(b))
    }

    fn ct(parts: &[u64]) -> CycleType {
        CycleType::from_parts(parts.to_vec()).unwrap()
    }

    #[test]
    fn decide_examples() {
        let d = kset_decide(&ct(&[5, 3, 2]), 2).unwrap();
        assert!(!d.has_regular_cycle());
        assert_eq!(d.min_cover_s, 3);
        let d = kset_decide(&ct(&[15, 10, 6]), 2).unwrap();
        assert!(d.has_regular_cycle());
        assert_eq!(d.min_cover_s, 2);
        assert_eq!(d.chosen_lengths(), vec![6, 10]);
        let d = kset_decide(&ct(&[1; 7]), 3).unwrap();
        assert!(d.has_regular_cycle());
        assert_eq!(d.min_cover_s, 0);
        assert!(kset_decide(&ct(&[3, 2]), 3).is_err());
        assert!(kset_decide(&ct(&[3, 2]), 0).is_err());
    }

    // every subset of distinct lengths, smallest size first
    fn brute_cover(ct: &CycleType) -> usize {
        let mut lens: Vec<u64> = ct.parts().iter().copied().filter(|&l| l > 1).collect();
        lens.dedup();
        let order = ct.order();
        (0u32..1 << lens.len())
            .filter(|mask| {
                let chosen: Vec<u64> = (0..lens.len()).filter(|i| mask >> i & 1 == 1).map(|i| lens[i]).collect();
                lcm_of(&chosen) == order
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn min_cover_is_minimal() {
        for m in 1..=24u64 {
            for parts in partitions(m) {
                let t = CycleType::from_parts(parts).unwrap();
                let c = min_cover(&t).unwrap();
                assert_eq!(lcm_of(&c.lengths), t.order(), "{t}");
                assert_eq!(c.s(), brute_cover(&t), "{t}");
            }
        }
    }

    #[test]
    fn min_cover_tie_break() {
        // [6,4,3]: both {3,4} and {4,6} reach 12
        assert_eq!(min_cover(&ct(&[6, 3, 2])).unwrap().lengths, vec![6]);
        assert_eq!(min_cover(&ct(&[6, 4, 3])).unwrap().lengths, vec![3, 4]);
    }

    #[test]
    fn witness_examples() {
        let g = Permutation::from_cycles(
            31,
            &[(0..15).collect(), (15..25).collect(), (25..31).collect()],
        )
        .unwrap();
        let w = kset_witness(&g, 2).unwrap();
        // {6,10} and {6,15} both reach 30; the tie-break takes {6,10}
        assert_eq!(w, vec![15, 25]);
        let ks = KSetAction::new(31, 2).unwrap();
        assert_eq!(orbit_length(&ks, &g, &w).unwrap(), 30);
        let brute = (0..ks.domain_size())
            .filter(|&i| orbit_length(&ks, &g, &ks.unrank(i)).unwrap() == 30)
            .count();
        assert!(brute > 0);

        let cyc = Permutation::parse("(1 2 3 4 5 6 7)", 7).unwrap();
        assert_eq!(kset_witness(&cyc, 1).unwrap(), vec![0]);

        let g = Permutation::parse("(1 2 3)(4 5)", 5).unwrap();
        let w = kset_witness(&g, 2).unwrap();
        assert_eq!(orbit_length(&KSetAction::new(5, 2).unwrap(), &g, &w).unwrap(), 6);

        let bad = Permutation::parse("(1 2)(3 4 5)(6 7 8 9 10)", 10).unwrap();
        assert!(matches!(kset_witness(&bad, 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn witness_complement() {
        let g = Permutation::parse("(1 2 3)(4 5)", 5).unwrap();
        let w = kset_witness(&g, 3).unwrap();
        assert_eq!(orbit_length(&KSetAction::new(5, 3).unwrap(), &g, &w).unwrap(), 6);
    }

    #[test]
    fn decide_matches_bruteforce_small() {
        for m in 2..=9u64 {
            for parts in partitions(m) {
                let t = CycleType::from_parts(parts).unwrap();
                let g = t.representative();
                for k in 1..=(m as usize) / 2 {
                    let d = kset_decide(&t, k).unwrap();
                    let ks = KSetAction::new(m as usize, k).unwrap();
                    let bf = decide_bruteforce(&ks, &g, DEFAULT_CAP).unwrap();
                    assert_eq!(d.has_regular_cycle(), bf.has_regular_cycle, "{t} k={k}");
                    if d.has_regular_cycle() {
                        kset_witness(&g, k).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn scan_examples() {
        assert!(ksets_theorem_scan(9, 2).unwrap().failing.is_empty());
        let r = ksets_theorem_scan(10, 2).unwrap();
        assert_eq!(r.failing, vec![ct(&[5, 3, 2])]);
        assert!(r.consistent());
        assert!(ksets_theorem_scan(4, 1).unwrap().failing.is_empty());
        assert!(ksets_theorem_scan(5, 1).unwrap().failing.contains(&ct(&[3, 2])));
        assert!(ksets_theorem_scan(3, 2).is_err());
    }
}
