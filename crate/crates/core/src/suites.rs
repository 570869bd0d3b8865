//! Verification suites: each check is an [`Assertion`] with a pass/fail
//! outcome, a provenance note and, on failure, the first counterexample.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::actions::{
    Action, AffineAction, CosetAction, DiagonalAction, KSetAction, NaturalAction, PartitionAction,
    ProductAction, WreathElement,
};
use crate::arith::nk_threshold;
use crate::bounds::{self, Check, MtTable};
use crate::error::{Error, Result};
use crate::gf::{AffineMap, Field, Matrix};
use crate::groups::{self, AmbientAutomorphisms, GeneratedGroup, ProjectiveKind};
use crate::lang::RunConfig;
use crate::perm::{partitions, CycleType, Permutation};
use crate::regcycle::{
    affine_witness, certify, decide_bruteforce, decide_fix_union, diagonal_fpr_audit, fpr, fpr_sum_sufficient,
    gl_regular_vector_set, kset_decide, kset_witness, laid_out, lift_witness, min_cover, orbit_length,
    orbit_lengths, partition_layout, partition_witness, product_witness, wreath_fpr_max, DiagonalShape,
};
use crate::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Ksets,
    Partitions,
    Product,
    Affine,
    Gl,
    Diagonal,
    S6Exception,
    RemarkA6,
    LemmaIdentities,
    BoundsAll,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Ksets,
        Suite::Partitions,
        Suite::Product,
        Suite::Affine,
        Suite::Gl,
        Suite::Diagonal,
        Suite::S6Exception,
        Suite::RemarkA6,
        Suite::LemmaIdentities,
        Suite::BoundsAll,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Ksets => "ksets",
            Suite::Partitions => "partitions",
            Suite::Product => "product",
            Suite::Affine => "affine",
            Suite::Gl => "gl",
            Suite::Diagonal => "diagonal",
            Suite::S6Exception => "s6-exception",
            Suite::RemarkA6 => "remark-a6",
            Suite::LemmaIdentities => "lemma-identities",
            Suite::BoundsAll => "bounds-all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite {s:?}")))
    }
}

/// One checked claim.
#[derive(Clone, Debug, PartialEq)]
pub struct Assertion {
    pub name: String,
    /// How the claim is checked.
    pub provenance: &'static str,
    pub outcome: Check,
    /// Number of elementary cases examined.
    pub checked: u64,
    pub detail: String,
    pub counterexample: Option<String>,
}

impl Assertion {
    fn new(name: impl Into<String>, provenance: &'static str) -> Self {
        Assertion {
            name: name.into(),
            provenance,
            outcome: Check::Pass,
            checked: 0,
            detail: String::new(),
            counterexample: None,
        }
    }

    /// Records a failure; only the first counterexample is kept.
    fn fail(&mut self, what: impl FnOnce() -> String) {
        self.outcome = Check::Fail;
        if self.counterexample.is_none() {
            self.counterexample = Some(what());
        }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what);
        }
    }

    fn detail(mut self, d: impl Into<String>) -> Self {
        self.detail = d.into();
        self
    }

    pub fn passed(&self) -> bool {
        self.outcome == Check::Pass
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub assertions: Vec<Assertion>,
    /// Evaluations reported for the record without a pass/fail claim.
    pub findings: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(Assertion::passed)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SuiteParams {
    pub m: Option<(u64, u64)>,
    pub k: Option<u64>,
    pub samples: Option<usize>,
}

/// Calls `f` on every permutation of degree `n` in lexicographic order of
/// image sequences.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&Permutation) -> Result<()>) -> Result<u64> {
    let mut images: Vec<u32> = (0..n as u32).collect();
    let mut count = 0u64;
    loop {
        f(&Permutation::from_images(images.clone())?)?;
        count += 1;
        let Some(i) = (1..n).rev().find(|&i| images[i - 1] < images[i]) else {
            return Ok(count);
        };
        let j = (i..n).rev().find(|&j| images[j] > images[i - 1]).expect("successor exists");
        images.swap(i - 1, j);
        images[i..].reverse();
    }
}

pub fn random_permutation(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut images: Vec<u32> = (0..n as u32).collect();
    images.shuffle(rng);
    Permutation::from_images(images).expect("shuffled identity")
}

fn cycle_type_of(parts: &[u64]) -> Result<CycleType> {
    CycleType::from_parts(parts.to_vec())
}

// ---------------------------------------------------------------- ksets

/// `[5,3,2]` on 2-sets of ten points: orbit lengths 1,3,5,5,6,10,15.
pub fn intro_example() -> Result<Assertion> {
    let mut a = Assertion::new("type [5,3,2] on 2-sets of 10 points", "worked example, full orbit scan");
    let act = KSetAction::new(10, 2)?;
    let g = Permutation::parse("(1 2)(3 4 5)(6 7 8 9 10)", 10)?;
    let lens = orbit_lengths(&act, &g, u64::MAX)?;
    a.require(lens == [1, 3, 5, 5, 6, 10, 15], || format!("orbit lengths {lens:?}"));
    let v = decide_bruteforce(&act, &g, u64::MAX)?;
    a.require(!v.has_regular_cycle && v.order == 30 && v.induced_order == 30, || format!("verdict {v:?}"));
    Ok(a.detail(format!("orbit lengths {lens:?}, |g| = 30")))
}

/// Cycle types of `Sym(m)` with no regular `k`-set cycle, by brute force
/// over the `k`-sets of a representative.
pub fn kset_failures_bruteforce(m: usize, k: usize) -> Result<Vec<CycleType>> {
    let act = KSetAction::new(m, k)?;
    let mut out = Vec::new();
    for parts in partitions(m as u64) {
        let ct = cycle_type_of(&parts)?;
        if !decide_bruteforce(&act, &ct.representative(), u64::MAX)?.has_regular_cycle {
            out.push(ct);
        }
    }
    Ok(out)
}

/// Every element has a regular `k`-set cycle exactly for `m` below the
/// threshold; checked by brute force and by the combinatorial rule.
pub fn kset_threshold_scan(k: usize, lo: usize, hi: usize) -> Result<Assertion> {
    let threshold = nk_threshold(k as u64) as usize;
    let mut a = Assertion::new(
        format!("k={k}: regular cycles for all types iff m < {threshold}, m in {}..={hi}", lo.max(2 * k)),
        "full cycle-type scan, brute force and combinatorial rule",
    );
    let mut at_threshold = None;
    for m in lo.max(2 * k)..=hi {
        let brute = kset_failures_bruteforce(m, k)?;
        let comb = crate::regcycle::ksets_theorem_scan(m, k)?;
        a.require(brute == comb.failing, || {
            format!("m={m}: brute force {brute:?} vs rule {:?}", comb.failing)
        });
        a.require(brute.is_empty() == (m < threshold), || {
            format!("m={m}: {} failing types, threshold {threshold}", brute.len())
        });
        if m == threshold {
            at_threshold = Some(brute);
        }
    }
    let detail = match at_threshold {
        Some(f) => format!(
            "threshold {threshold}; failing types at m={threshold}: {}",
            f.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
        ),
        None => format!("threshold {threshold} outside the scanned range"),
    };
    Ok(a.detail(detail))
}

/// The combinatorial rule against brute force for every cycle type and
/// every `k ≤ m/2`; every positive answer gets a certified witness.
pub fn kset_decide_agrees(lo: usize, hi: usize) -> Result<Assertion> {
    let mut a = Assertion::new(
        format!("k-set rule equals brute force, m in {lo}..={hi}, all k <= m/2"),
        "brute-force oracle over all k-sets",
    );
    for m in lo.max(2)..=hi {
        for parts in partitions(m as u64) {
            let ct = cycle_type_of(&parts)?;
            let g = ct.representative();
            for k in 1..=m / 2 {
                let d = kset_decide(&ct, k)?;
                let b = decide_bruteforce(&KSetAction::new(m, k)?, &g, u64::MAX)?;
                a.require(d.has_regular_cycle() == b.has_regular_cycle, || {
                    format!("type {ct}, k={k}: rule {} vs brute force {}", d.has_regular_cycle(), b.has_regular_cycle)
                });
                if d.has_regular_cycle() {
                    let ok = kset_witness(&g, k).is_ok();
                    a.require(ok, || format!("type {ct}, k={k}: witness construction failed"));
                }
            }
        }
    }
    let n = a.checked;
    Ok(a.detail(format!("{n} checks")))
}

// ----------------------------------------------------------- partitions

/// `partition_witness` on every element of `Sym(ab)`.
pub fn partition_exhaustive(a: usize, b: usize) -> Result<Assertion> {
    let mut asr = Assertion::new(
        format!("({a},{b}): certified witness for every element of Sym({})", a * b),
        "exhaustive over the group, orbit-certified",
    );
    let mut cases = std::collections::BTreeMap::new();
    for_each_permutation(a * b, |g| {
        match partition_witness(g, a, b) {
            Ok(w) => {
                *cases.entry(w.case.as_str()).or_insert(0u64) += 1;
                asr.checked += 1;
            }
            Err(e) => {
                asr.checked += 1;
                asr.fail(|| format!("g={g}: {e}"));
            }
        }
        Ok(())
    })?;
    let d = cases.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");
    Ok(asr.detail(d))
}

/// Distinct orderings of a multiset, in lexicographic order.
fn multiset_orderings(mut xs: Vec<usize>) -> Vec<Vec<usize>> {
    xs.sort_unstable();
    let mut out = vec![xs.clone()];
    let n = xs.len();
    loop {
        let Some(i) = (1..n).rev().find(|&i| xs[i - 1] < xs[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| xs[j] > xs[i - 1]).expect("successor exists");
        xs.swap(i - 1, j);
        xs[i..].reverse();
        out.push(xs.clone());
    }
}

/// Every cycle layout the construction can see for degree `n`: the chosen
/// cycles first, then each distinct ordering of the remaining lengths.
pub fn partition_layouts(n: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for parts in partitions(n as u64) {
        let ct = cycle_type_of(&parts)?;
        let cover = min_cover(&ct)?;
        let mut rest: Vec<usize> = parts.iter().map(|&p| p as usize).collect();
        for &l in &cover.lengths {
            let i = rest.iter().position(|&r| r as u64 == l).expect("cover length present");
            rest.remove(i);
        }
        for tail in multiset_orderings(rest) {
            let mut layout: Vec<usize> = cover.lengths.iter().map(|&l| l as usize).collect();
            layout.extend(tail);
            out.push(layout);
        }
    }
    Ok(out)
}

/// Every element of `Sym(ab)` through its layout: the construction sees `g`
/// only as the laid-out element `g^x`, so a certified witness for each
/// layout transports to every element. A seeded sample re-checks the
/// transport on random elements directly.
pub fn partition_by_layout(a: usize, b: usize, samples: usize, seed: u64) -> Result<Assertion> {
    let n = a * b;
    let mut asr = Assertion::new(
        format!("({a},{b}): certified witness for every element of Sym({n}) via cycle layouts"),
        "every layout certified, transport re-checked on a seeded sample",
    );
    let layouts = partition_layouts(n)?;
    for layout in &layouts {
        let c = laid_out(layout)?;
        let (seen, x) = partition_layout(&c)?;
        asr.require(&seen == layout && x.is_identity(), || {
            format!("layout {layout:?} is not its own layout ({seen:?})")
        });
        asr.checked += 1;
        if let Err(e) = partition_witness(&c, a, b) {
            asr.fail(|| format!("layout {layout:?}: {e}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let g = random_permutation(n, &mut rng);
        let (layout, x) = partition_layout(&g)?;
        let c = laid_out(&layout)?;
        asr.require(g.conjugate_by(&x) == c, || format!("g={g}: relabelling does not reach its layout"));
        let xinv = x.inverse();
        let transported = match partition_witness(&c, a, b) {
            Ok(w) => PartitionAction::canonicalize(
                w.point
                    .iter()
                    .map(|blk| blk.iter().map(|&p| xinv.image(p)).collect())
                    .collect(),
            ),
            Err(e) => {
                asr.fail(|| format!("layout {layout:?}: {e}"));
                continue;
            }
        };
        match partition_witness(&g, a, b) {
            Ok(w) => asr.require(w.point == transported, || format!("g={g}: witness differs from the transported one")),
            Err(e) => asr.fail(|| format!("g={g}: {e}")),
        }
    }
    Ok(asr.detail(format!("{} layouts, {samples} sampled elements", layouts.len())))
}

/// `(2,2)`: the construction refuses, and elements of order 4 reach orbits
/// of length at most 2.
pub fn partition_exception() -> Result<Assertion> {
    let mut asr = Assertion::new("(2,2): exceptional error and no regular cycle for order 4", "exhaustive over Sym(4)");
    let act = PartitionAction::new(2, 2)?;
    for_each_permutation(4, |g| {
        let refused = matches!(partition_witness(g, 2, 2), Err(Error::Exceptional(_)));
        asr.require(refused, || format!("g={g}: construction did not refuse"));
        if g.order() == 4 {
            let lens = orbit_lengths(&act, g, u64::MAX)?;
            asr.require(lens == [1, 2], || format!("g={g}: orbit lengths {lens:?}"));
            let v = decide_bruteforce(&act, g, u64::MAX)?;
            asr.require(!v.has_regular_cycle && v.flags.iter().any(|f| f == "unfaithful"), || {
                format!("g={g}: verdict {v:?}")
            });
        }
        Ok(())
    })?;
    Ok(asr.detail("order-4 elements: orbit lengths [1, 2]"))
}

// -------------------------------------------------------------- product

/// Calls `f` on every element of `H wr Sym(ell)` for `H` given by its elements.
fn for_each_wreath(
    inner: &[Permutation],
    ell: usize,
    mut f: impl FnMut(&WreathElement<Permutation>) -> Result<()>,
) -> Result<u64> {
    let total = (inner.len() as u64).pow(ell as u32);
    let mut count = 0;
    for sigma in crate::perm::all_permutations(ell) {
        for code in 0..total {
            let mut c = code;
            let comps = (0..ell)
                .map(|_| {
                    let h = inner[(c % inner.len() as u64) as usize].clone();
                    c /= inner.len() as u64;
                    h
                })
                .collect();
            f(&WreathElement::new(comps, sigma.clone())?)?;
            count += 1;
        }
    }
    Ok(count)
}

/// Every element of `Sym(n) wr Sym(ell)` in product action gets a
/// certified witness from the construction, matching brute force.
pub fn product_exhaustive(n: usize, ell: usize) -> Result<Assertion> {
    product_exhaustive_over(&format!("Sym({n})"), &groups::symmetric(n)?, ell)
}

/// As [`product_exhaustive`] for any inner group on its natural domain;
/// every inner element must have a regular cycle there.
pub fn product_exhaustive_over(name: &str, inner: &GeneratedGroup, ell: usize) -> Result<Assertion> {
    let n = inner.degree();
    let mut asr = Assertion::new(
        format!("{name} wr Sym({ell}) on {n}^{ell} points: certified witness for every element"),
        "exhaustive over the wreath product, brute-force cross-check",
    );
    let act = ProductAction::new(NaturalAction::new(n), ell)?;
    let mut inner_witnesses = std::collections::HashMap::new();
    for h in inner.elements() {
        let w = decide_bruteforce(&act.inner, h, u64::MAX)?
            .witness_index
            .ok_or_else(|| Error::Precondition(format!("{h} in {name} has no regular cycle on {n} points")))?;
        inner_witnesses.insert(h.clone(), w as u32);
    }
    let inner_witness = |h: &Permutation| -> Result<u32> {
        inner_witnesses
            .get(h)
            .copied()
            .ok_or_else(|| Error::NotInGroup(format!("{h} is not in {name}")))
    };
    let count = for_each_wreath(inner.elements(), ell, |g| {
        asr.checked += 1;
        match product_witness(&act, g, inner_witness) {
            Ok(x) => {
                if let Err(e) = certify(&act, g, &x) {
                    asr.fail(|| format!("g={g}: {e}"));
                }
            }
            Err(e) => asr.fail(|| format!("g={g}: {e}")),
        }
        let v = decide_bruteforce(&act, g, u64::MAX)?;
        asr.require(v.has_regular_cycle, || format!("g={g}: brute force finds no regular cycle"));
        Ok(())
    })?;
    Ok(asr.detail(format!("{count} elements")))
}

/// `(h,1,…,1)` has no regular cycle on `Δ^ℓ` whenever `h` has none on `Δ`.
pub fn inherited_failure_property(n: usize, ell: usize) -> Result<Assertion> {
    let mut asr = Assertion::new(
        format!("Sym({n}), ell={ell}: (h,1,..,1) inherits the lack of a regular cycle"),
        "exhaustive over h, brute force",
    );
    let inner = groups::symmetric(n)?;
    let nat = NaturalAction::new(n);
    let act = ProductAction::new(nat.clone(), ell)?;
    let mut inherited = 0;
    for h in inner.elements() {
        if decide_bruteforce(&nat, h, u64::MAX)?.has_regular_cycle {
            continue;
        }
        let mut comps = vec![Permutation::identity(n); ell];
        comps[0] = h.clone();
        let g = WreathElement::new(comps, Permutation::identity(ell))?;
        let v = decide_bruteforce(&act, &g, u64::MAX)?;
        asr.require(!v.has_regular_cycle, || format!("h={h}: lifted element has a regular cycle"));
        inherited += 1;
    }
    Ok(asr.detail(format!("{inherited} elements h without a regular cycle")))
}

// ---------------------------------------------------------- affine / gl

pub fn gl_spanning(d: usize, q: u64, cap: u64) -> Result<Assertion> {
    let mut asr = Assertion::new(format!("GL({d},{q}): regular vectors span"), "exhaustive over the group and V");
    for g in Matrix::general_linear(Field::get(q)?, d) {
        let s = gl_regular_vector_set(&g, cap)?;
        asr.require(s.spans, || format!("g={g}: {} regular vectors do not span", s.regular_vectors.len()));
    }
    let n = asr.checked;
    Ok(asr.detail(format!("{n} matrices")))
}

pub fn affine_all(d: usize, q: u64, cap: u64) -> Result<Assertion> {
    let mut asr = Assertion::new(format!("AGL({d},{q}): certified affine witness"), "exhaustive over the group");
    let act = AffineAction::new(q, d)?;
    for f in AffineMap::affine_general_linear(Field::get(q)?, d) {
        asr.checked += 1;
        match affine_witness(&f, cap).and_then(|w| certify(&act, &f, &w)) {
            Ok(()) => {}
            Err(e) => asr.fail(|| format!("f={f}: {e}")),
        }
    }
    let n = asr.checked;
    Ok(asr.detail(format!("{n} maps")))
}

/// The field orders and dimensions covered by the affine and linear suites.
pub const AFFINE_CASES: [(usize, u64); 14] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (1, 7),
    (1, 8),
    (1, 9),
    (1, 11),
    (1, 13),
    (2, 2),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 2),
];

// ------------------------------------------------------------- diagonal

fn alt5_diagonal(ell: usize) -> Result<DiagonalAction> {
    let amb = AmbientAutomorphisms::new(groups::alternating(5)?, groups::symmetric(5)?)?;
    DiagonalAction::new(amb, ell)
}

/// Every element of `W` for `Alt(5)`, `ℓ = 1`, with the fixed-point bounds.
pub fn diagonal_exhaustive(table: &MtTable) -> Result<Assertion> {
    let mut asr = Assertion::new(
        "Alt(5), ell=1: every element of W has a regular cycle; fpr bounds",
        "full enumeration of W, exact fixed-point counts",
    );
    let act = alt5_diagonal(1)?;
    let m_t = table.lookup("alt", 5)?.m_t;
    let audit = diagonal_fpr_audit(&act, m_t, None)?;
    asr.require(audit.elements == 14400, || format!("|W| = {}", audit.elements));
    asr.require(audit.regular_found == audit.regular_checked, || {
        format!("{} of {} elements regular", audit.regular_found, audit.regular_checked)
    });
    for row in &audit.rows {
        asr.require(row.holds(), || {
            format!("{} p={}: max fpr {} > {}", row.shape.as_str(), row.prime, row.max_fpr, row.bound)
        });
    }
    let swap = audit.row(DiagonalShape::SigmaMovesZero, 2);
    asr.require(swap.is_some_and(|r| r.max_fpr == Rational::new(16, 60)), || {
        format!("swap involutions: {swap:?}")
    });
    let inner = audit.row(DiagonalShape::SigmaTrivial, 2);
    asr.require(inner.is_some_and(|r| r.max_fpr <= Rational::new(1, 5)), || format!("inner involutions: {inner:?}"));
    let rows = audit
        .rows
        .iter()
        .map(|r| format!("{}/p={}: {}<={}", r.shape.as_str(), r.prime, r.max_fpr, r.bound))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(asr.detail(format!("|W|={} {rows}", audit.elements)))
}

/// Seeded random elements of `W` for `Alt(5)`, `ℓ = 2`.
pub fn diagonal_sampled(count: usize, seed: u64, table: &MtTable) -> Result<Assertion> {
    let mut asr = Assertion::new(
        format!("Alt(5), ell=2: {count} seeded elements of W have regular cycles; fpr bounds"),
        "seeded sample, exact fixed-point counts",
    );
    let act = alt5_diagonal(2)?;
    let m_t = table.lookup("alt", 5)?.m_t;
    let audit = diagonal_fpr_audit(&act, m_t, Some((seed, count)))?;
    asr.require(audit.regular_checked == count as u64, || format!("{} elements checked", audit.regular_checked));
    asr.require(audit.regular_found == audit.regular_checked, || {
        format!("{} of {} elements regular", audit.regular_found, audit.regular_checked)
    });
    for row in &audit.rows {
        asr.require(row.holds(), || {
            format!("{} p={}: max fpr {} > {}", row.shape.as_str(), row.prime, row.max_fpr, row.bound)
        });
    }
    let rows = audit
        .rows
        .iter()
        .map(|r| format!("{}/p={}: {}<={}", r.shape.as_str(), r.prime, r.max_fpr, r.bound))
        .collect::<Vec<_>>()
        .join(" ");
    Ok(asr.detail(format!("seed={seed} {rows}")))
}

// ---------------------------------------------------------- coset cases

fn gens_group(degree: usize, gens: &[&str], cap: u64) -> Result<GeneratedGroup> {
    let gens = gens
        .iter()
        .map(|g| Permutation::parse(g, degree))
        .collect::<Result<Vec<_>>>()?;
    GeneratedGroup::closure_with_degree(degree, &gens, cap)
}

/// Elements of `G` with no regular cycle on the cosets of `H`.
fn coset_failures(g: &GeneratedGroup, h: &GeneratedGroup, cap: u64) -> Result<(CosetAction, Vec<Permutation>)> {
    let act = CosetAction::new(g, h, cap)?;
    let mut bad = Vec::new();
    for x in g.elements() {
        if !decide_bruteforce(&act, x, cap)?.has_regular_cycle {
            bad.push(x.clone());
        }
    }
    Ok((act, bad))
}

/// `Sym(6)` on the cosets of a transitive `PGL_2(5)`: the failures are
/// exactly the 6-cycles, each inducing type `[3,2,1]`.
pub fn s6_exception(cfg: &RunConfig) -> Result<Assertion> {
    let mut asr = Assertion::new(
        "Sym(6) on cosets of transitive PGL2(5): 6-cycles induce [3,2,1] and are the only failures",
        "coset enumeration, brute force over the group",
    );
    let g = groups::symmetric(6)?;
    let h = groups::projective_group(5, ProjectiveKind::Pgl2)?;
    asr.require(h.order() == 120 && h.is_transitive() && h.is_subgroup_of(&g), || {
        format!("PGL2(5) has order {} and transitive={}", h.order(), h.is_transitive())
    });
    let (act, bad) = coset_failures(&g, &h, cfg.domain_cap)?;
    asr.require(act.domain_size() == 6, || format!("degree {}", act.domain_size()));
    let mut six_cycles = 0;
    for x in g.elements() {
        let is_six = x.cycle_type().parts() == [6];
        if is_six {
            six_cycles += 1;
            let lens = orbit_lengths(&act, x, cfg.domain_cap)?;
            asr.require(lens == [1, 2, 3], || format!("{x}: induced orbit lengths {lens:?}"));
        }
        asr.require(bad.contains(x) == is_six, || format!("{x}: regular-cycle verdict does not match its type"));
    }
    Ok(asr.detail(format!("{six_cycles} six-cycles, {} failing elements", bad.len())))
}

/// The other degree-6 coset actions with a primitive point stabilizer have
/// no failures of order 6.
pub fn degree6_family(cfg: &RunConfig) -> Result<Assertion> {
    let mut asr = Assertion::new(
        "degree-6 coset actions of Alt(6), Sym(5), Alt(5): no order-6 failures",
        "coset enumeration, brute force over each group",
    );
    let cases: Vec<(&str, GeneratedGroup, GeneratedGroup)> = vec![
        ("Alt(6)/PSL2(5)", groups::alternating(6)?, groups::projective_group(5, ProjectiveKind::Psl2)?),
        ("Sym(5)/AGL1(5)", groups::symmetric(5)?, gens_group(5, &["(1 2 3 4 5)", "(2 3 5 4)"], cfg.group_cap)?),
        ("Alt(5)/D10", groups::alternating(5)?, gens_group(5, &["(1 2 3 4 5)", "(2 5)(3 4)"], cfg.group_cap)?),
    ];
    let mut parts = Vec::new();
    for (name, g, h) in &cases {
        let (act, bad) = coset_failures(g, h, cfg.domain_cap)?;
        asr.require(act.domain_size() == 6 && h.is_transitive(), || {
            format!("{name}: degree {} transitive={}", act.domain_size(), h.is_transitive())
        });
        let order6 = bad.iter().filter(|x| x.order() == 6).count();
        asr.require(order6 == 0, || format!("{name}: {order6} order-6 failures"));
        parts.push(format!("{name}: {} failures", bad.len()));
    }
    Ok(asr.detail(parts.join(", ")))
}

/// Finest block system merging `0` and `b`, by union-find closure.
fn block_merges_all(gens: &[Permutation], n: usize, b: u32) -> bool {
    let mut parent: Vec<u32> = (0..n as u32).collect();
    fn find(p: &mut [u32], mut x: u32) -> u32 {
        while p[x as usize] != x {
            p[x as usize] = p[p[x as usize] as usize];
            x = p[x as usize];
        }
        x
    }
    let mut queue = vec![(0u32, b)];
    let mut classes = n;
    let (r0, rb) = (find(&mut parent, 0), find(&mut parent, b));
    parent[rb as usize] = r0;
    classes -= 1;
    while let Some((x, y)) = queue.pop() {
        for s in gens {
            let (u, v) = (s.image(x), s.image(y));
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[rv as usize] = ru;
                classes -= 1;
                queue.push((u, v));
            }
        }
    }
    classes == 1
}

/// Transitive with no nontrivial block system.
pub fn is_primitive(gens: &[Permutation], n: usize) -> bool {
    if n <= 1 {
        return true;
    }
    let g = GeneratedGroup::closure_with_degree(n, gens, u64::MAX);
    let transitive = g.map(|g| g.is_transitive()).unwrap_or(false);
    transitive && (1..n as u32).all(|b| block_merges_all(gens, n, b))
}

/// A Sylow `p`-subgroup, grown greedily from `p`-elements.
pub fn sylow_subgroup(g: &GeneratedGroup, p: u64) -> Result<GeneratedGroup> {
    let mut target = 1u64;
    let mut rest = g.order();
    while rest % p == 0 {
        target *= p;
        rest /= p;
    }
    let is_p_power = |mut n: u64| {
        while n % p == 0 {
            n /= p;
        }
        n == 1
    };
    let mut gens = vec![g.identity()];
    let mut current = GeneratedGroup::closure_with_degree(g.degree(), &gens, g.order())?;
    for x in g.elements() {
        if current.order() == target {
            break;
        }
        if current.contains(x) || !is_p_power(x.order()) {
            continue;
        }
        gens.push(x.clone());
        let next = GeneratedGroup::closure_with_degree(g.degree(), &gens, g.order())?;
        if is_p_power(next.order()) {
            current = next;
        } else {
            gens.pop();
        }
    }
    if current.order() != target {
        return Err(Error::Precondition(format!("no Sylow {p}-subgroup of order {target} found")));
    }
    Ok(current)
}

/// The point stabilizer, the normalizer of a Sylow 5-subgroup and a Sylow
/// 2-subgroup of a group between `PSL_2(9)` and `PΓL_2(9)`.
fn a6_stabilizers(g: &GeneratedGroup) -> Result<Vec<GeneratedGroup>> {
    let five = g
        .element_of_order(5)
        .ok_or_else(|| Error::Precondition("no element of order 5".into()))?
        .clone();
    let p5 = g.cyclic_subgroup(&five)?;
    Ok(vec![g.point_stabilizer(0)?, g.normalizer(&p5)?, sylow_subgroup(g, 2)?])
}

/// `PGL_2(9)`, `M_10`, `PΓL_2(9)`: primitive actions of degrees 10, 36,
/// 45, every element with a regular cycle.
pub fn remark_a6(cfg: &RunConfig) -> Result<Vec<Assertion>> {
    let mut out = Vec::new();
    for (name, kind, order) in [
        ("PGL2(9)", ProjectiveKind::Pgl2, 720),
        ("M10", ProjectiveKind::M10, 720),
        ("PGammaL2(9)", ProjectiveKind::PGammaL2, 1440),
    ] {
        let mut asr = Assertion::new(
            format!("{name}: primitive coset actions of degrees 10, 36, 45 all have regular cycles"),
            "coset enumeration, primitivity by block closure, brute force over the group",
        );
        let g = groups::projective_group(9, kind)?;
        asr.require(g.order() == order, || format!("|{name}| = {}", g.order()));
        let mut degrees = Vec::new();
        for h in a6_stabilizers(&g)? {
            let act = CosetAction::new(&g, &h, cfg.domain_cap)?;
            let n = act.domain_size() as usize;
            degrees.push(n);
            let gens = g
                .generators()
                .iter()
                .map(|x| act.table.induced(x))
                .collect::<Result<Vec<_>>>()?;
            asr.require(is_primitive(&gens, n), || format!("degree {n} action is not primitive"));
            for x in g.elements() {
                let v = decide_bruteforce(&act, x, cfg.domain_cap)?;
                asr.require(v.has_regular_cycle, || format!("degree {n}: {x} has no regular cycle"));
            }
        }
        asr.require(degrees == [10, 36, 45], || format!("degrees {degrees:?}"));
        out.push(asr.detail(format!("degrees {degrees:?}, {} elements each", g.order())));
    }
    Ok(out)
}

// ------------------------------------------------------ lemma identities

/// `fpr(g)` on the cosets of `H` equals `|g^G ∩ H| / |g^G|`.
pub fn fpr_identity(cfg: &RunConfig) -> Result<Assertion> {
    let mut asr = Assertion::new(
        "fpr on cosets equals |g^G meet H| / |g^G|",
        "exact rationals over every element",
    );
    let pgl = groups::projective_group(9, ProjectiveKind::PGammaL2)?;
    let pairs: Vec<(&str, GeneratedGroup, GeneratedGroup)> = vec![
        ("Sym(6)/PGL2(5)", groups::symmetric(6)?, groups::projective_group(5, ProjectiveKind::Pgl2)?),
        ("Sym(5)/AGL1(5)", groups::symmetric(5)?, gens_group(5, &["(1 2 3 4 5)", "(2 3 5 4)"], cfg.group_cap)?),
        ("Sym(5)/Sym(4)", groups::symmetric(5)?, groups::symmetric(5)?.point_stabilizer(4)?),
        ("PGammaL2(9)/Sylow2", pgl.clone(), sylow_subgroup(&pgl, 2)?),
    ];
    for (name, g, h) in &pairs {
        let act = CosetAction::new(g, h, cfg.domain_cap)?;
        for class in g.conjugacy_classes() {
            let meet = class.iter().filter(|x| h.contains(x)).count() as u64;
            let want = Rational::new(meet, class.len() as u64);
            for x in &class {
                let got = fpr(&act, x, cfg.domain_cap)?;
                asr.require(got == want, || format!("{name}: g={x}: fpr {got} vs {want}"));
            }
        }
    }
    let n = asr.checked;
    Ok(asr.detail(format!("{n} elements over {} pairs", pairs.len())))
}

/// A sum of prime-power fprs below 1 never meets a negative verdict.
pub fn fpr_sum_soundness(max_m: usize) -> Result<Assertion> {
    let mut asr = Assertion::new(
        format!("fpr-sum certificate implies a regular cycle (natural and 2-sets, m <= {max_m})"),
        "exhaustive over the groups, brute-force oracle",
    );
    let mut certified = 0u64;
    for m in 2..=max_m {
        let nat = NaturalAction::new(m);
        let ks = (m >= 4).then(|| KSetAction::new(m, 2)).transpose()?;
        for_each_permutation(m, |g| {
            if g.is_identity() {
                return Ok(());
            }
            let s = fpr_sum_sufficient(&nat, g, u64::MAX)?;
            if s.certifies() {
                certified += 1;
                asr.require(decide_bruteforce(&nat, g, u64::MAX)?.has_regular_cycle, || format!("natural m={m}: {g}"));
            }
            if let Some(ks) = &ks {
                let s = fpr_sum_sufficient(ks, g, u64::MAX)?;
                if s.certifies() {
                    certified += 1;
                    asr.require(decide_bruteforce(ks, g, u64::MAX)?.has_regular_cycle, || format!("2-sets m={m}: {g}"));
                }
            }
            Ok(())
        })?;
    }
    Ok(asr.detail(format!("{certified} certificates checked")))
}

/// With `p² | |g|`, every point on a `g^p`-orbit of length `|g|/p` lies on
/// a regular cycle of `g`.
pub fn lift_property(max_m: usize) -> Result<Assertion> {
    let mut asr = Assertion::new(
        format!("lift: g^p-orbit |g|/p implies g-orbit |g| (natural and 2-sets, m <= {max_m})"),
        "exhaustive over elements and points",
    );
    fn check<A: Action<Elem = Permutation>>(asr: &mut Assertion, a: &A, g: &Permutation) -> Result<()> {
        let order = g.order();
        for p in crate::arith::factorize(order)?.primes() {
            if order % (p * p) != 0 {
                continue;
            }
            let gp = g.pow(p);
            for i in 0..a.domain_size() {
                let w = a.unrank(i);
                if orbit_length(a, &gp, &w)? == order / p {
                    let ok = lift_witness(a, g, p, &w).is_ok() && orbit_length(a, g, &w)? == order;
                    asr.require(ok, || format!("{} g={g} p={p} w={}", a.describe(), a.render_point(&w)));
                }
            }
        }
        Ok(())
    }
    for m in 4..=max_m {
        let nat = NaturalAction::new(m);
        let ks = KSetAction::new(m, 2)?;
        for_each_permutation(m, |g| {
            check(&mut asr, &nat, g)?;
            check(&mut asr, &ks, g)
        })?;
    }
    let n = asr.checked;
    Ok(asr.detail(format!("{n} lifted points")))
}

/// Maximum fpr over `A wr B` equals the maximum over `A`.
pub fn wreath_fpr(pairs: &[(usize, usize)]) -> Result<Assertion> {
    let mut asr = Assertion::new("wreath fpr maximum equals the inner maximum", "exhaustive, exact rationals");
    let mut parts = Vec::new();
    for &(a, b) in pairs {
        let ga = groups::symmetric(a)?;
        let gb = groups::symmetric(b)?;
        let r = wreath_fpr_max(&ga, &gb)?;
        asr.require(r.equal(), || format!("Sym({a}) wr Sym({b}): {} vs {}", r.wreath_max, r.inner_max));
        parts.push(format!("Sym({a}) wr Sym({b}): {} = {} over {} elements", r.wreath_max, r.inner_max, r.elements_scanned));
    }
    Ok(asr.detail(parts.join("; ")))
}

/// The actions in the oracle corpus for degree `m`.
fn corpus_actions(m: usize) -> Result<Vec<CorpusAction>> {
    let mut out = vec![CorpusAction::Natural(NaturalAction::new(m))];
    for k in 2..=m / 2 {
        out.push(CorpusAction::KSets(KSetAction::new(m, k)?));
    }
    for a in 2..m {
        if m % a == 0 && m / a >= 2 {
            out.push(CorpusAction::Partitions(PartitionAction::new(a, m / a)?));
        }
    }
    Ok(out)
}

enum CorpusAction {
    Natural(NaturalAction),
    KSets(KSetAction),
    Partitions(PartitionAction),
}

fn agree<A: Action>(asr: &mut Assertion, a: &A, g: &A::Elem) -> Result<()> {
    let b = decide_bruteforce(a, g, u64::MAX)?;
    let f = decide_fix_union(a, g, u64::MAX)?;
    let same = b.has_regular_cycle == f.has_regular_cycle
        && b.induced_order == f.induced_order
        && (!f.has_regular_cycle || f.certified);
    asr.require(same, || format!("{} g={g}: brute force {b:?} vs fix-union {f:?}", a.describe()));
    Ok(())
}

/// Fix-union against brute force over every element of `Sym(m)` for
/// `m ≤ max_m` in every natural, k-set and partition action, plus the
/// coset, affine, linear and diagonal examples.
pub fn oracle_corpus(max_m: usize, cfg: &RunConfig) -> Result<Assertion> {
    let mut asr = Assertion::new(
        format!("fix-union equals brute force on the corpus (Sym(m), m <= {max_m}, and named groups)"),
        "exhaustive pairwise comparison",
    );
    for m in 2..=max_m {
        let actions = corpus_actions(m)?;
        for_each_permutation(m, |g| {
            for a in &actions {
                match a {
                    CorpusAction::Natural(a) => agree(&mut asr, a, g)?,
                    CorpusAction::KSets(a) => agree(&mut asr, a, g)?,
                    CorpusAction::Partitions(a) => agree(&mut asr, a, g)?,
                }
            }
            Ok(())
        })?;
    }
    let s6 = groups::symmetric(6)?;
    let coset = CosetAction::new(&s6, &groups::projective_group(5, ProjectiveKind::Pgl2)?, cfg.domain_cap)?;
    for g in s6.elements() {
        agree(&mut asr, &coset, g)?;
    }
    for (d, q) in [(2, 3), (2, 4)] {
        let act = AffineAction::new(q, d)?;
        for f in AffineMap::affine_general_linear(Field::get(q)?, d) {
            agree(&mut asr, &act, &f)?;
        }
        let vec = crate::actions::VectorAction::new(q, d)?;
        for g in Matrix::general_linear(Field::get(q)?, d) {
            agree(&mut asr, &vec, &g)?;
        }
    }
    let diag = alt5_diagonal(1)?;
    for g in diag.w_group(cfg.group_cap)?.elements() {
        agree(&mut asr, &diag, g)?;
    }
    let n = asr.checked;
    Ok(asr.detail(format!("{n} (element, action) pairs")))
}

/// Fix-union against brute force on `Sym(m)` for `lo ≤ m ≤ hi`: every
/// cycle-type representative plus `samples` seeded random elements per
/// degree, in every natural, k-set and partition action.
pub fn oracle_sampled(lo: usize, hi: usize, samples: usize, seed: u64) -> Result<Assertion> {
    let mut asr = Assertion::new(
        format!("fix-union equals brute force on Sym(m), m in {lo}..={hi}: all cycle types and {samples} sampled elements per m"),
        "pairwise comparison on type representatives and a seeded sample",
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for m in lo..=hi {
        let actions = corpus_actions(m)?;
        let mut elements: Vec<Permutation> = partitions(m as u64)
            .map(|p| Ok(cycle_type_of(&p)?.representative()))
            .collect::<Result<_>>()?;
        elements.extend((0..samples).map(|_| random_permutation(m, &mut rng)));
        for g in &elements {
            for a in &actions {
                match a {
                    CorpusAction::Natural(a) => agree(&mut asr, a, g)?,
                    CorpusAction::KSets(a) => agree(&mut asr, a, g)?,
                    CorpusAction::Partitions(a) => agree(&mut asr, a, g)?,
                }
            }
        }
    }
    let n = asr.checked;
    Ok(asr.detail(format!("{n} (element, action) pairs, seed {seed}")))
}

// --------------------------------------------------------------- bounds

fn sweep_assertion(name: String, provenance: &'static str, s: &bounds::Sweep) -> Assertion {
    let mut a = Assertion::new(name, provenance);
    a.checked = s.checked;
    if !s.failed.is_empty() {
        a.outcome = Check::Fail;
        a.counterexample = s.failed.first().cloned();
    } else if !s.inconclusive.is_empty() {
        a.outcome = Check::Inconclusive;
        a.counterexample = s.inconclusive.first().cloned();
    }
    let worst = s.worst_slack.map_or("-".to_string(), |w| format!("{w:.3e}"));
    a.detail(format!(
        "{} checked, {} failed, {} inconclusive, least slack {worst}",
        s.checked,
        s.failed.len(),
        s.inconclusive.len()
    ))
}

pub fn robin_assertion(lo: u64, hi: u64) -> Result<Assertion> {
    let s = bounds::robin_sweep(lo, hi)?;
    Ok(sweep_assertion(format!("omega(n) below the log bound on [{lo}, {hi}]"), "sieve omega, interval bound", &s))
}

pub fn massias_assertion(lo: u64, hi: u64) -> Result<Assertion> {
    let mut s = bounds::Sweep::default();
    for m in lo..=hi {
        let log_a = bounds::ln_big(&BigUint::from(bounds::landau_exact(m)?))?;
        let rhs = bounds::massias_bound(m)?;
        let c = bounds::check_le(log_a, rhs);
        s.checked += 1;
        let slack = (rhs - log_a).lo();
        s.worst_slack = Some(s.worst_slack.map_or(slack, |w: f64| w.min(slack)));
        match c {
            Check::Pass => s.passed += 1,
            Check::Fail => s.failed.push(format!("m={m}")),
            Check::Inconclusive => s.inconclusive.push(format!("m={m}")),
        }
    }
    Ok(sweep_assertion(
        format!("log of the Landau value below the element-order bound on [{lo}, {hi}]"),
        "exact Landau DP, interval bound",
        &s,
    ))
}

pub fn stirling_assertion(hi: u64) -> Result<Assertion> {
    let s = bounds::stirling_sweep(hi)?;
    Ok(sweep_assertion(format!("Stirling brackets for n in [1, {hi}]"), "exact factorial, interval brackets", &s))
}

pub fn technical_assertion(max_m: u64, max_p: u64, max_c: u64) -> Result<Assertion> {
    let s = bounds::technical_sweep(max_m, max_p, &bounds::technical_alphas(max_c))?;
    Ok(sweep_assertion(
        format!("technical inequality for m <= {max_m}, p <= {max_p}, alpha in {{4/7}} and 1-2/c, c <= {max_c}"),
        "log-space interval evaluation",
        &s,
    ))
}

pub fn alpha_beta_assertion(lo: u64, hi: u64) -> Result<(Assertion, Vec<String>)> {
    let scan = bounds::alpha_beta_scan(lo, hi)?;
    let mut s = bounds::Sweep::default();
    let zero = bounds::Interval::exact(0.0);
    let mut rounded_fail = Vec::new();
    for r in &scan.rows {
        let c = bounds::check_le(r.log_product_exact, zero);
        s.checked += 1;
        let slack = -r.log_product_exact.hi();
        s.worst_slack = Some(s.worst_slack.map_or(slack, |w: f64| w.min(slack)));
        match c {
            Check::Pass => s.passed += 1,
            Check::Fail => s.failed.push(format!("m={}", r.m)),
            Check::Inconclusive => s.inconclusive.push(format!("m={}", r.m)),
        }
        if !r.rounded.is_pass() {
            rounded_fail.push(r.m);
        }
    }
    let mut findings = vec![format!(
        "alpha*beta with the constant 1.2: {} of {} values of m not below 1",
        rounded_fail.len(),
        scan.rows.len()
    )];
    if let Some(r) = scan.rows.first() {
        findings.push(format!(
            "alpha*beta at m={}: exact form {:.4}, constant form {:.4}",
            r.m,
            r.log_product_exact.mid().exp(),
            r.log_product_rounded.mid().exp()
        ));
    }
    findings.push(format!("alpha*beta not decreasing (m >= 100) at {:?}", scan.non_decreasing_at));
    Ok((
        sweep_assertion(
            format!("alpha_m * beta_m < 1 on [{lo}, {hi}] (exact Stirling factor)"),
            "interval evaluation in logs",
            &s,
        ),
        findings,
    ))
}

pub fn crude_assertion(table: &MtTable, max_ell: u32) -> Result<(Assertion, Vec<String>)> {
    let mut a = Assertion::new(
        format!("crude diagonal bound evaluated exactly for every table entry, ell <= {max_ell}"),
        "exact rational arithmetic",
    );
    let mut at_least_one = Vec::new();
    for e in table.entries() {
        for ell in 1..=max_ell {
            let v = bounds::diagonal_crude_bound(e.m_t, e.omega_aut, ell)?;
            let approx = e.omega_aut as f64 / (e.m_t as f64).powi(ell as i32) + 4.0 / 15.0 + 1.0 / 59.0;
            a.require((bounds::rational_to_f64(&v) - approx).abs() < 1e-12, || {
                format!("{}:{} ell={ell}: exact {v} vs float {approx}", e.family, e.parameter)
            });
            if !bounds::below_one(&v) {
                at_least_one.push(format!("{}:{} ell={ell}", e.family, e.parameter));
            }
        }
    }
    let alt5 = bounds::diagonal_crude_bound(5, 3, 1)?;
    let alt7 = bounds::diagonal_crude_bound(7, 4, 1)?;
    a.require(bounds::below_one(&alt5) && bounds::below_one(&alt7), || "Alt(5) or Alt(7) at ell=1 not below 1".into());
    let findings = vec![
        format!("crude bound for Alt(5), ell=1: {alt5} = {:.4}", bounds::rational_to_f64(&alt5)),
        format!("crude bound entries not below 1: {at_least_one:?}"),
    ];
    let n = a.checked;
    Ok((a.detail(format!("{n} evaluations")), findings))
}

pub fn e8_assertion(hi: u64) -> Result<Assertion> {
    let s = bounds::e8_sweep(hi)?;
    Ok(sweep_assertion(format!("E8 inequality for prime powers q <= {hi}"), "interval evaluation", &s))
}

/// The product-action case bound over every `(c, ℓ, d)` with `dℓ ≥ 2` and
/// `144 < C(c,d)^ℓ ≤ max_m`.
pub fn wreath_case_assertion(max_m: u64) -> Result<(Assertion, Vec<String>)> {
    let mut a = Assertion::new(
        format!("product-action case bound times alpha_m below 1 for 144 < m <= {max_m}"),
        "log-space interval evaluation",
    );
    let mut failing = Vec::new();
    for ell in 1..=20u64 {
        for c in 3..=200u64 {
            for d in 1..=(c - 1) / 2 {
                if d * ell < 2 {
                    continue;
                }
                let row = match bounds::wreath_case_bound(c, ell, d) {
                    Ok(r) => r,
                    Err(Error::Precondition(_)) | Err(Error::OutOfRange(_)) => continue,
                    Err(e) => return Err(e),
                };
                if row.m > BigUint::from(max_m) || row.excepted {
                    continue;
                }
                a.checked += 1;
                if !row.check.is_pass() {
                    failing.push(format!("(c={c},l={ell},d={d}) value {:.4}", row.log_value.mid().exp()));
                    if a.outcome == Check::Pass || row.check == Check::Fail {
                        a.outcome = row.check;
                    }
                    if a.counterexample.is_none() {
                        a.counterexample = failing.last().cloned();
                    }
                }
            }
        }
    }
    let n = a.checked;
    let findings = if failing.is_empty() {
        Vec::new()
    } else {
        vec![format!("product-action case bound not below 1 at {} triples: {}", failing.len(), failing.join(", "))]
    };
    Ok((a.detail(format!("{n} triples, {} not below 1", failing.len())), findings))
}

// ---------------------------------------------------------------- runner

fn single(suite: Suite, assertions: Vec<Assertion>) -> SuiteReport {
    SuiteReport {
        suite,
        assertions,
        findings: Vec::new(),
    }
}

pub fn run_suite(suite: Suite, params: &SuiteParams, cfg: &RunConfig, table: &MtTable) -> Result<SuiteReport> {
    cfg.validate()?;
    let samples = params.samples;
    Ok(match suite {
        Suite::Ksets => {
            let (lo, hi) = params.m.unwrap_or((4, 13));
            if hi > 20 {
                return Err(Error::OutOfRange(format!("k-set suite scans m <= 20, got {hi}")));
            }
            let (lo, hi) = (lo as usize, hi as usize);
            let ks: Vec<usize> = match params.k {
                Some(k) => vec![k as usize],
                None => vec![1, 2, 3],
            };
            let mut a = vec![intro_example()?];
            for k in ks {
                if 2 * k <= hi {
                    a.push(kset_threshold_scan(k, lo, hi)?);
                }
            }
            a.push(kset_decide_agrees(lo, hi)?);
            single(suite, a)
        }
        Suite::Partitions => {
            let mut a = vec![partition_exception()?];
            for (x, y) in [(2, 3), (3, 2), (2, 4), (4, 2), (3, 3)] {
                a.push(partition_exhaustive(x, y)?);
            }
            for (x, y) in [(2, 5), (5, 2), (2, 6), (6, 2), (3, 4), (4, 3)] {
                a.push(partition_by_layout(x, y, samples.unwrap_or(2000), cfg.seed)?);
            }
            single(suite, a)
        }
        Suite::Product => {
            let mut a = Vec::new();
            for (n, ell) in [(3, 2), (3, 3), (4, 2)] {
                a.push(product_exhaustive(n, ell)?);
            }
            a.push(product_exhaustive_over("Alt(5)", &groups::alternating(5)?, 2)?);
            a.push(inherited_failure_property(5, 2)?);
            a.push(inherited_failure_property(4, 3)?);
            single(suite, a)
        }
        Suite::Affine => single(
            suite,
            AFFINE_CASES
                .iter()
                .map(|&(d, q)| affine_all(d, q, cfg.domain_cap))
                .collect::<Result<_>>()?,
        ),
        Suite::Gl => single(
            suite,
            AFFINE_CASES
                .iter()
                .map(|&(d, q)| gl_spanning(d, q, cfg.domain_cap))
                .collect::<Result<_>>()?,
        ),
        Suite::Diagonal => single(
            suite,
            vec![
                diagonal_exhaustive(table)?,
                diagonal_sampled(samples.unwrap_or(10_000), cfg.seed, table)?,
            ],
        ),
        Suite::S6Exception => single(suite, vec![s6_exception(cfg)?, degree6_family(cfg)?]),
        Suite::RemarkA6 => single(suite, remark_a6(cfg)?),
        Suite::LemmaIdentities => single(
            suite,
            vec![
                fpr_identity(cfg)?,
                fpr_sum_soundness(7)?,
                lift_property(7)?,
                wreath_fpr(&[(3, 2), (4, 2), (3, 3)])?,
                oracle_corpus(7, cfg)?,
                oracle_sampled(9, 10, samples.unwrap_or(200), cfg.seed)?,
            ],
        ),
        Suite::BoundsAll => {
            let mut findings = Vec::new();
            let m3 = bounds::massias_bound(3)?;
            findings.push(format!(
                "element-order bound at m=3: {:.4} against log 3 = {:.4}",
                m3.mid(),
                3f64.ln()
            ));
            let (ab, f) = alpha_beta_assertion(47, 10_000)?;
            findings.extend(f);
            let (crude, f) = crude_assertion(table, 3)?;
            findings.extend(f);
            let (wreath, f) = wreath_case_assertion(100_000_000)?;
            findings.extend(f);
            SuiteReport {
                suite,
                assertions: vec![
                    robin_assertion(26, 1_000_000)?,
                    massias_assertion(4, 200)?,
                    stirling_assertion(1000)?,
                    technical_assertion(200, 13, 30)?,
                    ab,
                    crude,
                    e8_assertion(1024)?,
                    wreath,
                ],
                findings,
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.as_str().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn permutation_enumeration_counts() {
        let mut seen = HashSet::new();
        let n = for_each_permutation(5, |g| {
            assert!(seen.insert(g.clone()));
            Ok(())
        })
        .unwrap();
        assert_eq!(n, 120);
    }

    #[test]
    fn layouts_cover_degree_six() {
        // every element of Sym(6) lands on one of the enumerated layouts
        let layouts: HashSet<Vec<usize>> = partition_layouts(6).unwrap().into_iter().collect();
        for_each_permutation(6, |g| {
            assert!(layouts.contains(&partition_layout(g).unwrap().0));
            Ok(())
        })
        .unwrap();
    }

    #[test]
    fn multiset_orderings_are_distinct() {
        let o = multiset_orderings(vec![2, 1, 1]);
        assert_eq!(o, vec![vec![1, 1, 2], vec![1, 2, 1], vec![2, 1, 1]]);
    }

    #[test]
    fn intro_and_small_scans() {
        assert!(intro_example().unwrap().passed());
        let a = kset_threshold_scan(1, 2, 6).unwrap();
        assert!(a.passed(), "{a:?}");
        assert!(a.detail.contains("[3,2]") || a.detail.contains("3,2"), "{}", a.detail);
        assert!(kset_decide_agrees(2, 7).unwrap().passed());
    }

    #[test]
    fn small_partition_checks() {
        assert!(partition_exception().unwrap().passed());
        assert!(partition_exhaustive(2, 3).unwrap().passed());
        assert!(partition_by_layout(2, 4, 50, 1).unwrap().passed());
    }

    #[test]
    fn primitivity_and_sylow() {
        let s4 = groups::symmetric(4).unwrap();
        assert!(is_primitive(s4.generators(), 4));
        let d8 = gens_group(4, &["(1 2 3 4)", "(1 3)"], 100).unwrap();
        assert!(!is_primitive(d8.generators(), 4));
        let p = sylow_subgroup(&s4, 2).unwrap();
        assert_eq!(p.order(), 8);
        assert_eq!(sylow_subgroup(&s4, 3).unwrap().order(), 3);
    }

    #[test]
    fn s6_suite() {
        let cfg = RunConfig::default();
        let a = s6_exception(&cfg).unwrap();
        assert!(a.passed(), "{a:?}");
        assert!(degree6_family(&cfg).unwrap().passed());
    }

    #[test]
    fn product_needs_regular_inner_elements() {
        assert!(matches!(product_exhaustive(5, 2), Err(Error::Precondition(_))));
        assert!(product_exhaustive(3, 2).unwrap().passed());
    }

    #[test]
    fn failing_sweep_is_reported() {
        let a = technical_assertion(3, 3, 3).unwrap();
        assert_eq!(a.outcome, Check::Fail);
        assert!(a.counterexample.unwrap().starts_with("m=2 p=2 k=1"));
    }
}
