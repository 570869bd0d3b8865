use std::collections::HashSet;

use super::certify;
use super::kset::{chosen_cycles, min_cover};
use crate::actions::PartitionAction;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Which construction produced a partition witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PartitionCase {
    Identity,
    /// One cycle of length `|g| = 2`.
    Involution,
    /// One cycle of length `|g| ≤ a`.
    SingleWide,
    /// One cycle, `a ∤ ℓ_1`.
    SingleRemainder,
    /// One cycle, `ℓ_1 = qa` with `q < b`.
    SingleExact,
    /// `g` is an `ab`-cycle.
    FullCycle,
    /// `s ≥ 2`, `s ≤ a ≤ ℓ − s`.
    Spread,
    /// `s ≥ 2`, `a > ℓ − s`.
    Saturated,
    /// `s ≥ 2`, `a < s`.
    Narrow,
}

impl PartitionCase {
    pub fn as_str(self) -> &'static str {
        match self {
            PartitionCase::Identity => "identity",
            PartitionCase::Involution => "involution",
            PartitionCase::SingleWide => "single-wide",
            PartitionCase::SingleRemainder => "single-remainder",
            PartitionCase::SingleExact => "single-exact",
            PartitionCase::FullCycle => "full-cycle",
            PartitionCase::Spread => "spread",
            PartitionCase::Saturated => "saturated",
            PartitionCase::Narrow => "narrow",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionWitness {
    pub point: Vec<Vec<u32>>,
    pub case: PartitionCase,
}

/// New labels: the chosen cycles first, ascending by length, each in cycle
/// order from its least point, then the remaining cycles in canonical order.
struct Relabel {
    old_of_new: Vec<u32>,
    /// `g` in new labels.
    g: Vec<u32>,
    starts: Vec<usize>,
    lens: Vec<usize>,
}

impl Relabel {
    fn new(g: &Permutation, chosen: &[Vec<u32>]) -> Self {
        let mut old_of_new = Vec::with_capacity(g.degree());
        let mut starts = Vec::new();
        let mut lens = Vec::new();
        let firsts: HashSet<u32> = chosen.iter().map(|c| c[0]).collect();
        for c in chosen {
            starts.push(old_of_new.len());
            lens.push(c.len());
            old_of_new.extend_from_slice(c);
        }
        for c in g.cycles_with_fixed() {
            if !firsts.contains(&c[0]) {
                old_of_new.extend_from_slice(&c);
            }
        }
        let mut new_of_old = vec![0u32; g.degree()];
        for (new, &old) in old_of_new.iter().enumerate() {
            new_of_old[old as usize] = new as u32;
        }
        let gn = old_of_new.iter().map(|&o| new_of_old[g.image(o) as usize]).collect();
        Relabel {
            old_of_new,
            g: gn,
            starts,
            lens,
        }
    }

    fn map_back(&self, blocks: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
        PartitionAction::canonicalize(
            blocks
                .into_iter()
                .map(|b| b.into_iter().map(|x| self.old_of_new[x as usize]).collect())
                .collect(),
        )
    }
}

/// Splits the points not yet used into blocks of `a`, either smallest or
/// largest points first.
fn fill(mut blocks: Vec<Vec<u32>>, n: usize, a: usize, ascending: bool) -> Vec<Vec<u32>> {
    let used: HashSet<u32> = blocks.iter().flatten().copied().collect();
    let mut rest: Vec<u32> = (0..n as u32).filter(|p| !used.contains(p)).collect();
    if !ascending {
        rest.reverse();
    }
    blocks.extend(rest.chunks(a).map(|c| c.to_vec()));
    blocks
}

fn run(from: usize, len: usize) -> Vec<u32> {
    (from as u32..(from + len) as u32).collect()
}

/// A `(a,b)`-uniform partition on a regular cycle of `g`, built by the
/// case analysis on `s`, `a` and `ℓ` and certified by its orbit.
pub fn partition_witness(g: &Permutation, a: usize, b: usize) -> Result<PartitionWitness> {
    if a < 2 || b < 2 {
        return Err(Error::Precondition(format!("need a, b >= 2, got ({a},{b})")));
    }
    let n = a * b;
    if g.degree() != n {
        return Err(Error::DegreeMismatch {
            expected: n,
            found: g.degree(),
        });
    }
    if (a, b) == (2, 2) {
        return Err(Error::Exceptional("(a,b) = (2,2): no element of order 4 has a regular cycle".into()));
    }
    let cover = min_cover(&g.cycle_type())?;
    let chosen = chosen_cycles(g, &cover);
    let rl = Relabel::new(g, &chosen);
    let s = chosen.len();
    let (blocks, case) = match s {
        0 => (fill(Vec::new(), n, a, true), PartitionCase::Identity),
        1 => single_cycle(&rl, a, b),
        _ => {
            let ell: usize = rl.lens.iter().sum();
            if a < s {
                (narrow(&rl, a, b, s), PartitionCase::Narrow)
            } else if a <= ell - s {
                (spread(&rl, a, s), PartitionCase::Spread)
            } else {
                (saturated(&rl, a, b, ell, s), PartitionCase::Saturated)
            }
        }
    };
    let point = rl.map_back(blocks);
    let action = PartitionAction::new(a, b)?;
    certify(&action, g, &point)?;
    Ok(PartitionWitness { point, case })
}

/// The cycle lengths of `g` in the order the construction lays them out
/// (chosen cycles first, then the rest by least point) and the relabelling
/// `x` with `g^x = laid_out(lengths)`. The construction only sees `g^x`, so
/// the witness for `g` is the image under `x^{-1}` of the witness for `g^x`.
pub fn partition_layout(g: &Permutation) -> Result<(Vec<usize>, Permutation)> {
    let cover = min_cover(&g.cycle_type())?;
    let rl = Relabel::new(g, &chosen_cycles(g, &cover));
    let mut new_of_old = vec![0u32; g.degree()];
    for (new, &old) in rl.old_of_new.iter().enumerate() {
        new_of_old[old as usize] = new as u32;
    }
    let gn = Permutation::from_images(rl.g)?;
    let lengths = gn.cycles_with_fixed().iter().map(Vec::len).collect();
    Ok((lengths, Permutation::from_images(new_of_old)?))
}

/// `(1 … l_1)(l_1+1 … l_1+l_2)…` on consecutive points.
pub fn laid_out(lengths: &[usize]) -> Result<Permutation> {
    let n: usize = lengths.iter().sum();
    let mut cycles = Vec::with_capacity(lengths.len());
    let mut start = 0u32;
    for &l in lengths {
        cycles.push((start..start + l as u32).collect::<Vec<u32>>());
        start += l as u32;
    }
    Permutation::from_cycles(n, &cycles)
}

fn single_cycle(rl: &Relabel, a: usize, b: usize) -> (Vec<Vec<u32>>, PartitionCase) {
    let n = a * b;
    let l1 = rl.lens[0];
    if l1 == 2 {
        return (involution(rl, a, b), PartitionCase::Involution);
    }
    if a >= l1 {
        let mut first = run(0, l1 - 1);
        first.extend(run(l1, a - l1 + 1));
        return (fill(vec![first], n, a, true), PartitionCase::SingleWide);
    }
    let (q, r) = (l1 / a, l1 % a);
    if r >= 1 {
        return (fill(Vec::new(), n, a, true), PartitionCase::SingleRemainder);
    }
    if q < b {
        let mut blocks: Vec<Vec<u32>> = (0..q - 1).map(|i| run(i * a, a)).collect();
        let mut aq = run((q - 1) * a, a - 1);
        aq.push((q * a) as u32);
        let mut aq1 = vec![(q * a - 1) as u32];
        aq1.extend(run(q * a + 1, a - 1));
        blocks.push(aq);
        blocks.push(aq1);
        return (fill(blocks, n, a, true), PartitionCase::SingleExact);
    }
    let blocks = if a > 2 {
        let mut a1 = run(1, a - 2);
        a1.extend([(2 * a - 2) as u32, (2 * a - 1) as u32]);
        let mut a2 = vec![0u32];
        a2.extend(run(a - 1, a - 1));
        vec![a1, a2]
    } else {
        vec![vec![0, 2], vec![1, 3]]
    };
    (fill(blocks, n, a, true), PartitionCase::FullCycle)
}

/// `g` is an involution whose first chosen cycle is `(0 1)`.
fn involution(rl: &Relabel, a: usize, b: usize) -> Vec<Vec<u32>> {
    let n = a * b;
    let gimg = |x: u32| rl.g[x as usize];
    if b == 2 {
        // a >= 3 here; the block containing 0 must differ from its image
        let others: Vec<u32> = (2..n as u32).collect();
        let mut w = match others.iter().find(|&&x| gimg(x) == x) {
            Some(&fixed) => vec![fixed],
            None => vec![2, gimg(2)],
        };
        let pad = a - 1 - w.len();
        let extra: Vec<u32> = others.iter().copied().filter(|x| !w.contains(x)).take(pad).collect();
        w.extend(extra);
        let mut first = vec![0u32];
        first.extend(w);
        return fill(vec![first], n, a, true);
    }
    let mut a1 = vec![0u32];
    a1.extend(run(2, a - 1));
    let mut image: Vec<u32> = a1.iter().map(|&x| gimg(x)).collect();
    image.sort_unstable();
    let rest = run(a + 1, n - a - 1);
    let mut a2 = vec![1u32];
    a2.extend_from_slice(&rest[..a - 1]);
    if a2 == image {
        a2.truncate(1);
        a2.extend_from_slice(&rest[rest.len() - (a - 1)..]);
    }
    fill(vec![a1, a2], n, a, true)
}

/// `s ≤ a ≤ ℓ − s`: runs `X_i` of length `x_i` from each chosen cycle.
fn spread(rl: &Relabel, a: usize, s: usize) -> Vec<Vec<u32>> {
    let n = rl.g.len();
    let lens = &rl.lens;
    let mut x = vec![1usize; s];
    let mut extra = a - s;
    for i in (0..s).rev() {
        let add = extra.min(lens[i] - 2);
        x[i] += add;
        extra -= add;
    }
    if x.iter().any(|&v| v > 1) && lens[0] != 2 && lens[0] == 2 * x[0] {
        match (1..s).find(|&i| x[i] > 1) {
            None => {
                x[0] -= 1;
                x[1] += 1;
            }
            Some(i) => {
                x[0] += 1;
                x[i] -= 1;
            }
        }
    }
    let first: Vec<u32> = (0..s).flat_map(|i| run(rl.starts[i], x[i])).collect();
    fill(vec![first], n, a, false)
}

/// `a > ℓ − s`: all but one point of each chosen cycle, padded from outside.
fn saturated(rl: &Relabel, a: usize, b: usize, ell: usize, s: usize) -> Vec<Vec<u32>> {
    let n = a * b;
    let mut first: Vec<u32> = (0..s).flat_map(|i| run(rl.starts[i], rl.lens[i] - 1)).collect();
    first.extend(run(ell, a - (ell - s)));
    fill(vec![first], n, a, true)
}

/// `a < s`, `s = qa + r`: blocks of cycle leaders.
fn narrow(rl: &Relabel, a: usize, b: usize, s: usize) -> Vec<Vec<u32>> {
    let n = a * b;
    let (q, r) = (s / a, s % a);
    let lead = |j: usize| rl.starts[j] as u32;
    let mut blocks: Vec<Vec<u32>> = (0..q).map(|i| (i * a..(i + 1) * a).map(lead).collect()).collect();
    if r > 0 {
        let mut blk: Vec<u32> = (q * a..q * a + r).map(lead).collect();
        blk.extend((0..a - r).map(|j| lead(j) + 1));
        blocks.push(blk);
    }
    fill(blocks, n, a, false)
}
