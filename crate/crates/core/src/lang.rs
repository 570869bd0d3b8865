//! Group, action and element mini-languages, and the decision front end
//! shared by the CLI and the suites.
//!
//! Groups: `sym:N`, `alt:N`, `gl:d,q`, `agl:d,q`, `psl2:q`, `pgl2:q`,
//! `pgammal2:q`, `m10`, `diag:altN,L`, `gens:(cycles;cycles;…)@N`.
//!
//! Actions: `natural`, `ksets:K`, `partitions:AxB`, `product:<inner>^R`,
//! `vectors`, `affine`, `diagonal[:L]`, `cosets:<group>`.
//!
//! Elements: cycle notation; `type:5,3,2` for a cycle type in `sym`/`alt`;
//! `[[..],[..]]` for `gl`; `[[..],[..]]+[..]` for `agl`;
//! `h_1;…;h_R@σ` for product actions; `sigma=..;phi=..;t=..,..` for `diag`.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::actions::{
    Action, AffineAction, CosetAction, DiagonalAction, DiagonalElement, KSetAction, NaturalAction,
    PartitionAction, ProductAction, VectorAction, WreathElement, DEFAULT_DOMAIN_CAP,
};
use crate::error::{Error, Result};
use crate::gf::{AffineMap, Field, Matrix};
use crate::groups::{self, AmbientAutomorphisms, GeneratedGroup, ProjectiveKind, DEFAULT_GROUP_CAP};
use crate::perm::{partitions, CycleType, Permutation};
use crate::regcycle::{
    affine_witness, certify, decide_bruteforce, decide_fix_union, kset_decide, kset_witness, ksets_theorem_scan, partition_witness,
    product_witness, Method, Verdict,
};

/// Fix-union keeps one bit per point instead of a 32-bit image, so it may
/// run on domains this many times larger than the brute-force cap.
pub const FIX_UNION_FACTOR: u64 = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub domain_cap: u64,
    pub group_cap: u64,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            domain_cap: DEFAULT_DOMAIN_CAP,
            group_cap: DEFAULT_GROUP_CAP,
            seed: 0,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.domain_cap == 0 || self.group_cap == 0 {
            return Err(Error::OutOfRange("caps must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Sym(usize),
    Alt(usize),
    Gl { d: usize, q: u64 },
    Agl { d: usize, q: u64 },
    Projective { q: u64, kind: ProjectiveKind },
    Diag { n: usize, ell: usize },
    Gens { degree: usize, gens: Vec<Permutation> },
}

fn parse_num<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what}: {s:?}")))
}

fn parse_pair(s: &str, what: &str) -> Result<(usize, u64)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| Error::Parse(format!("{what} needs d,q: {s:?}")))?;
    Ok((parse_num(a, "dimension")?, parse_num(b, "field order")?))
}

fn split_gens(body: &str) -> Vec<&str> {
    let mut parts: Vec<&str> = body.split(';').map(str::trim).collect();
    // the list may be wrapped in one extra pair of parentheses
    if let (Some(first), Some(last)) = (parts.first().copied(), parts.last().copied()) {
        if first.starts_with("((") && last.ends_with("))") {
            let n = parts.len();
            parts[0] = &first[1..];
            parts[n - 1] = &parts[n - 1][..parts[n - 1].len() - 1];
        }
    }
    parts
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (head, rest) = text.split_once(':').unwrap_or((text, ""));
        let spec = match head.to_ascii_lowercase().as_str() {
            "sym" => GroupSpec::Sym(parse_num(rest, "degree")?),
            "alt" => GroupSpec::Alt(parse_num(rest, "degree")?),
            "gl" => {
                let (d, q) = parse_pair(rest, "gl")?;
                GroupSpec::Gl { d, q }
            }
            "agl" => {
                let (d, q) = parse_pair(rest, "agl")?;
                GroupSpec::Agl { d, q }
            }
            "psl2" | "pgl2" | "pgammal2" => {
                let kind = match head {
                    "psl2" => ProjectiveKind::Psl2,
                    "pgl2" => ProjectiveKind::Pgl2,
                    _ => ProjectiveKind::PGammaL2,
                };
                GroupSpec::Projective {
                    q: parse_num(rest, "field order")?,
                    kind,
                }
            }
            "m10" => GroupSpec::Projective {
                q: 9,
                kind: ProjectiveKind::M10,
            },
            "diag" => {
                let (t, ell) = rest
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("diag needs altN,L: {rest:?}")))?;
                let n = t
                    .trim()
                    .strip_prefix("alt")
                    .ok_or_else(|| Error::Parse(format!("diag supports alternating T only: {t:?}")))?;
                GroupSpec::Diag {
                    n: parse_num(n, "degree")?,
                    ell: parse_num(ell, "ell")?,
                }
            }
            "gens" => {
                let (body, degree) = rest
                    .rsplit_once('@')
                    .ok_or_else(|| Error::Parse(format!("gens needs (..)@N: {rest:?}")))?;
                let degree: usize = parse_num(degree, "degree")?;
                let gens = split_gens(body)
                    .into_iter()
                    .map(|g| Permutation::parse(g, degree))
                    .collect::<Result<Vec<_>>>()?;
                GroupSpec::Gens { degree, gens }
            }
            _ => return Err(Error::Parse(format!("unknown group {text:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Sym(n) => write!(f, "sym:{n}"),
            GroupSpec::Alt(n) => write!(f, "alt:{n}"),
            GroupSpec::Gl { d, q } => write!(f, "gl:{d},{q}"),
            GroupSpec::Agl { d, q } => write!(f, "agl:{d},{q}"),
            GroupSpec::Projective { q, kind } => match kind {
                ProjectiveKind::Psl2 => write!(f, "psl2:{q}"),
                ProjectiveKind::Pgl2 => write!(f, "pgl2:{q}"),
                ProjectiveKind::PGammaL2 => write!(f, "pgammal2:{q}"),
                ProjectiveKind::M10 => write!(f, "m10"),
            },
            GroupSpec::Diag { n, ell } => write!(f, "diag:alt{n},{ell}"),
            GroupSpec::Gens { degree, gens } => {
                let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                write!(f, "gens:({})@{degree}", parts.join(";"))
            }
        }
    }
}

impl GroupSpec {
    fn validate(&self) -> Result<()> {
        match *self {
            GroupSpec::Sym(n) | GroupSpec::Alt(n) if n == 0 || n > 64 => {
                Err(Error::OutOfRange(format!("degree {n} outside 1..=64")))
            }
            GroupSpec::Gl { d, q } | GroupSpec::Agl { d, q } => {
                Field::get(q)?;
                if d == 0 || d > 8 {
                    return Err(Error::OutOfRange(format!("dimension {d} outside 1..=8")));
                }
                Ok(())
            }
            GroupSpec::Projective { q, .. } => Field::get(q).map(|_| ()),
            GroupSpec::Diag { n, ell } if !(5..=7).contains(&n) || ell == 0 => {
                Err(Error::OutOfRange(format!("diag supports alt5..alt7 with L >= 1, got alt{n},{ell}")))
            }
            GroupSpec::Gens { degree, ref gens } if degree == 0 || gens.is_empty() => {
                Err(Error::Parse("gens needs a positive degree and at least one generator".into()))
            }
            _ => Ok(()),
        }
    }

    /// Degree of the natural permutation representation, for permutation groups.
    pub fn perm_degree(&self) -> Option<usize> {
        match self {
            GroupSpec::Sym(n) | GroupSpec::Alt(n) => Some(*n),
            GroupSpec::Projective { q, .. } => Some(*q as usize + 1),
            GroupSpec::Gens { degree, .. } => Some(*degree),
            _ => None,
        }
    }

    /// The group as permutations, by closure.
    pub fn perm_group(&self, cap: u64) -> Result<GeneratedGroup> {
        match self {
            GroupSpec::Sym(n) => groups::symmetric_capped(*n, cap),
            GroupSpec::Alt(n) => GeneratedGroup::closure_with_degree(*n, &groups::alternating_generators(*n), cap),
            GroupSpec::Projective { q, kind } => {
                let g = groups::projective_group(*q, *kind)?;
                if g.order() > cap {
                    return Err(Error::CapExceeded {
                        what: "group order",
                        cap,
                        reached: g.order(),
                    });
                }
                Ok(g)
            }
            GroupSpec::Gens { degree, gens } => GeneratedGroup::closure_with_degree(*degree, gens, cap),
            _ => Err(Error::Precondition(format!("{self} is not given as a permutation group"))),
        }
    }

    /// Membership of a permutation; `sym` and `alt` avoid enumeration.
    pub fn contains_perm(&self, g: &Permutation, cap: u64) -> Result<bool> {
        let degree = self
            .perm_degree()
            .ok_or_else(|| Error::Precondition(format!("{self} is not a permutation group")))?;
        if g.degree() != degree {
            return Err(Error::DegreeMismatch {
                expected: degree,
                found: g.degree(),
            });
        }
        match self {
            GroupSpec::Sym(_) => Ok(true),
            GroupSpec::Alt(_) => Ok(groups::is_even(g)),
            _ => Ok(self.perm_group(cap)?.contains(g)),
        }
    }

    fn diagonal_action(&self) -> Result<DiagonalAction> {
        let GroupSpec::Diag { n, ell } = *self else {
            return Err(Error::Precondition(format!("{self} is not a diagonal group")));
        };
        let amb = AmbientAutomorphisms::new(groups::alternating(n)?, groups::symmetric(n)?)?;
        DiagonalAction::new(amb, ell)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ActionSpec {
    Natural,
    KSets(usize),
    Partitions(usize, usize),
    Product(Box<ActionSpec>, usize),
    Vectors,
    Affine,
    Diagonal(Option<usize>),
    Cosets(GroupSpec),
}

impl FromStr for ActionSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (head, rest) = text.split_once(':').unwrap_or((text, ""));
        let no_arg = |spec: ActionSpec| {
            if rest.is_empty() {
                Ok(spec)
            } else {
                Err(Error::Parse(format!("action {head:?} takes no argument")))
            }
        };
        match head.to_ascii_lowercase().as_str() {
            "natural" => no_arg(ActionSpec::Natural),
            "vectors" => no_arg(ActionSpec::Vectors),
            "affine" => no_arg(ActionSpec::Affine),
            "ksets" => {
                let k: usize = parse_num(rest, "k")?;
                if k == 0 {
                    return Err(Error::OutOfRange("k must be positive".into()));
                }
                Ok(ActionSpec::KSets(k))
            }
            "partitions" => {
                let (a, b) = rest
                    .to_ascii_lowercase()
                    .split_once('x')
                    .map(|(a, b)| (a.to_string(), b.to_string()))
                    .ok_or_else(|| Error::Parse(format!("partitions needs AxB: {rest:?}")))?;
                Ok(ActionSpec::Partitions(parse_num(&a, "a")?, parse_num(&b, "b")?))
            }
            "product" => {
                let (inner, r) = rest
                    .rsplit_once('^')
                    .ok_or_else(|| Error::Parse(format!("product needs <inner>^R: {rest:?}")))?;
                let inner: ActionSpec = inner.parse()?;
                let r: usize = parse_num(r, "R")?;
                if r == 0 {
                    return Err(Error::OutOfRange("R must be positive".into()));
                }
                Ok(ActionSpec::Product(Box::new(inner), r))
            }
            "diagonal" if rest.is_empty() => Ok(ActionSpec::Diagonal(None)),
            "diagonal" => Ok(ActionSpec::Diagonal(Some(parse_num(rest, "L")?))),
            "cosets" => Ok(ActionSpec::Cosets(rest.parse()?)),
            _ => Err(Error::Parse(format!("unknown action {text:?}"))),
        }
    }
}

impl fmt::Display for ActionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionSpec::Natural => write!(f, "natural"),
            ActionSpec::KSets(k) => write!(f, "ksets:{k}"),
            ActionSpec::Partitions(a, b) => write!(f, "partitions:{a}x{b}"),
            ActionSpec::Product(inner, r) => write!(f, "product:{inner}^{r}"),
            ActionSpec::Vectors => write!(f, "vectors"),
            ActionSpec::Affine => write!(f, "affine"),
            ActionSpec::Diagonal(None) => write!(f, "diagonal"),
            ActionSpec::Diagonal(Some(l)) => write!(f, "diagonal:{l}"),
            ActionSpec::Cosets(g) => write!(f, "cosets:{g}"),
        }
    }
}

/// Splits `t=(..),(..)` bodies on the commas that follow a closing parenthesis.
fn split_after_paren(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut prev_close = false;
    for (i, c) in s.char_indices() {
        match c {
            ',' if prev_close => {
                out.push(s[start..i].trim());
                start = i + 1;
                prev_close = false;
            }
            ')' => prev_close = true,
            c if c.is_whitespace() => {}
            _ => prev_close = false,
        }
    }
    out.push(s[start..].trim());
    out
}

/// Parses `sigma=..;phi=..;t=..,..`; `phi` defaults to the identity.
pub fn parse_diagonal_element(text: &str, n: usize, ell: usize) -> Result<DiagonalElement> {
    let mut sigma = None;
    let mut phi = None;
    let mut t = None;
    for field in text.split(';') {
        let (k, v) = field
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected key=value in {field:?}")))?;
        match k.trim() {
            "sigma" => sigma = Some(Permutation::parse(v, ell + 1)?),
            "phi" => phi = Some(Permutation::parse(v, n)?),
            "t" => {
                t = Some(
                    split_after_paren(v)
                        .into_iter()
                        .map(|c| Permutation::parse(c, n))
                        .collect::<Result<Vec<_>>>()?,
                )
            }
            other => return Err(Error::Parse(format!("unknown field {other:?}"))),
        }
    }
    Ok(DiagonalElement {
        sigma: sigma.unwrap_or_else(|| Permutation::identity(ell + 1)),
        phi: phi.unwrap_or_else(|| Permutation::identity(n)),
        t: t.unwrap_or_else(|| vec![Permutation::identity(n); ell + 1]),
    })
}

/// `type:5,3,2` or `type:[5,3,2]`, padded with fixed points to `degree`.
pub fn parse_cycle_type(text: &str, degree: usize) -> Result<Option<CycleType>> {
    let Some(body) = text.trim().strip_prefix("type:") else {
        return Ok(None);
    };
    let body = body.trim().trim_start_matches('[').trim_end_matches(']');
    let mut parts = body
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| parse_num::<u64>(s, "cycle length"))
        .collect::<Result<Vec<_>>>()?;
    if parts.contains(&0) {
        return Err(Error::Parse("cycle lengths must be positive".into()));
    }
    let total: u64 = parts.iter().sum();
    if total > degree as u64 {
        return Err(Error::DegreeMismatch {
            expected: degree,
            found: total as usize,
        });
    }
    parts.extend(std::iter::repeat(1).take(degree - total as usize));
    Ok(Some(CycleType::from_parts(parts)?))
}

/// A constructive witness for when the domain is too large to scan.
type Constructive<'a, P> = Option<Box<dyn Fn() -> Result<P> + 'a>>;

/// Brute force under the cap, fix-union under [`FIX_UNION_FACTOR`] times
/// the cap, then the constructive witness if there is one.
fn run<A: Action>(a: &A, g: &A::Elem, cfg: &RunConfig, constructive: Constructive<'_, A::Point>) -> Result<Verdict> {
    a.check_element(g)?;
    let n = a.domain_size();
    if n <= cfg.domain_cap {
        return decide_bruteforce(a, g, cfg.domain_cap);
    }
    let union_cap = cfg.domain_cap.saturating_mul(FIX_UNION_FACTOR);
    if n <= union_cap {
        return decide_fix_union(a, g, union_cap);
    }
    let Some(build) = constructive else {
        return Err(Error::CapExceeded {
            what: "domain size",
            cap: union_cap,
            reached: n,
        });
    };
    let x = build().map_err(|e| match e {
        Error::Precondition(_) | Error::Exceptional(_) => Error::CapExceeded {
            what: "domain size",
            cap: union_cap,
            reached: n,
        },
        other => other,
    })?;
    certify(a, g, &x)?;
    let order = a.element_order(g);
    Ok(Verdict {
        element: g.to_string(),
        action: a.describe(),
        order,
        // an orbit of length |g| forces the induced order to be |g|
        induced_order: order,
        has_regular_cycle: true,
        witness: Some(a.render_point(&x)),
        witness_index: None,
        method: Method::ConstructiveProof,
        certified: true,
        flags: a.flags(),
        induced_cycle_type: None,
    })
}

fn product_run<A: Action<Elem = Permutation>>(
    inner: A,
    r: usize,
    g: &WreathElement<Permutation>,
    cfg: &RunConfig,
) -> Result<Verdict> {
    let action = ProductAction::new(inner, r)?;
    let inner_cap = cfg.domain_cap;
    let inner_witness = |h: &Permutation| -> Result<A::Point> {
        let v = decide_bruteforce(&action.inner, h, inner_cap)?;
        v.witness_index
            .map(|i| action.inner.unrank(i))
            .ok_or_else(|| Error::Precondition(format!("{h} has no regular cycle in the inner action")))
    };
    let build = || product_witness(&action, g, inner_witness);
    run(&action, g, cfg, Some(Box::new(build)))
}

fn parse_wreath(text: &str, group: &GroupSpec, r: usize, cfg: &RunConfig) -> Result<WreathElement<Permutation>> {
    let degree = group.perm_degree().expect("permutation group");
    let (comps, sigma) = text
        .rsplit_once('@')
        .ok_or_else(|| Error::Parse(format!("product element needs h_1;..;h_R@sigma: {text:?}")))?;
    let components = split_gens(comps)
        .into_iter()
        .map(|c| {
            let h = Permutation::parse(c, degree)?;
            if !group.contains_perm(&h, cfg.group_cap)? {
                return Err(Error::NotInGroup(format!("{h} is not in {group}")));
            }
            Ok(h)
        })
        .collect::<Result<Vec<_>>>()?;
    if components.len() != r {
        return Err(Error::Shape(format!("{} components for rank {r}", components.len())));
    }
    WreathElement::new(components, Permutation::parse(sigma, r)?)
}

/// Decides whether `element` of `group` has a regular cycle in `action`.
pub fn decide(group: &GroupSpec, action: &ActionSpec, element: &str, cfg: &RunConfig) -> Result<Verdict> {
    cfg.validate()?;
    let mut verdict = decide_inner(group, action, element, cfg)?;
    verdict.action = action.to_string();
    Ok(verdict)
}

fn perm_element(group: &GroupSpec, element: &str, cfg: &RunConfig) -> Result<(Permutation, Option<CycleType>)> {
    let degree = group.perm_degree().expect("permutation group");
    let (g, ct) = match parse_cycle_type(element, degree)? {
        Some(ct) => {
            if !matches!(group, GroupSpec::Sym(_) | GroupSpec::Alt(_)) {
                return Err(Error::Parse("cycle types are accepted for sym and alt only".into()));
            }
            (ct.representative(), Some(ct))
        }
        None => (Permutation::parse(element, degree)?, None),
    };
    if !group.contains_perm(&g, cfg.group_cap)? {
        return Err(Error::NotInGroup(format!("{g} is not in {group}")));
    }
    Ok((g, ct))
}

fn decide_inner(group: &GroupSpec, action: &ActionSpec, element: &str, cfg: &RunConfig) -> Result<Verdict> {
    let mismatch = || Error::Precondition(format!("action {action} does not apply to {group}"));
    match group {
        GroupSpec::Gl { d, q } => {
            if !matches!(action, ActionSpec::Vectors | ActionSpec::Natural) {
                return Err(mismatch());
            }
            let g = Matrix::parse(element, Field::get(*q)?)?;
            if g.rows() != *d || !g.is_invertible() {
                return Err(Error::NotInGroup(format!("{g} is not in {group}")));
            }
            run(&VectorAction::new(*q, *d)?, &g, cfg, None)
        }
        GroupSpec::Agl { d, q } => {
            if !matches!(action, ActionSpec::Affine | ActionSpec::Natural) {
                return Err(mismatch());
            }
            let f = AffineMap::parse(element, Field::get(*q)?)?;
            if f.dim() != *d {
                return Err(Error::NotInGroup(format!("{f} is not in {group}")));
            }
            let cap = cfg.domain_cap;
            run(&AffineAction::new(*q, *d)?, &f, cfg, Some(Box::new(|| affine_witness(&f, cap))))
        }
        GroupSpec::Diag { n, ell } => {
            match action {
                ActionSpec::Diagonal(None) => {}
                ActionSpec::Diagonal(Some(l)) if l == ell => {}
                _ => return Err(mismatch()),
            }
            let a = group.diagonal_action()?;
            let x = parse_diagonal_element(element, *n, *ell)?;
            let g = a.realize(&x)?;
            let mut v = run(&a, &g, cfg, None)?;
            v.element = x.to_string();
            Ok(v)
        }
        _ => decide_perm(group, action, element, cfg),
    }
}

fn decide_perm(group: &GroupSpec, action: &ActionSpec, element: &str, cfg: &RunConfig) -> Result<Verdict> {
    let degree = group.perm_degree().expect("permutation group");
    if let ActionSpec::Product(inner, r) = action {
        let g = parse_wreath(element, group, *r, cfg)?;
        return match inner.as_ref() {
            ActionSpec::Natural => product_run(NaturalAction::new(degree), *r, &g, cfg),
            ActionSpec::KSets(k) => product_run(KSetAction::new(degree, *k)?, *r, &g, cfg),
            ActionSpec::Partitions(a, b) => {
                check_partition_degree(*a, *b, degree)?;
                product_run(PartitionAction::new(*a, *b)?, *r, &g, cfg)
            }
            ActionSpec::Cosets(h) => product_run(coset_action(group, h, cfg)?, *r, &g, cfg),
            _ => Err(Error::Precondition(format!("product inner action {inner} is not a permutation action"))),
        };
    }
    let (g, ct) = perm_element(group, element, cfg)?;
    match action {
        ActionSpec::Natural => run(&NaturalAction::new(degree), &g, cfg, None),
        ActionSpec::KSets(k) => {
            if let Some(ct) = ct {
                return kset_by_type(&ct, &g, *k, cfg);
            }
            let a = KSetAction::new(degree, *k)?;
            let k = *k;
            run(&a, &g, cfg, Some(Box::new(|| kset_witness(&g, k))))
        }
        ActionSpec::Partitions(a, b) => {
            check_partition_degree(*a, *b, degree)?;
            let act = PartitionAction::new(*a, *b)?;
            let (a, b) = (*a, *b);
            run(&act, &g, cfg, Some(Box::new(|| Ok(partition_witness(&g, a, b)?.point))))
        }
        ActionSpec::Cosets(h) => run(&coset_action(group, h, cfg)?, &g, cfg, None),
        _ => Err(Error::Precondition(format!("action {action} does not apply to {group}"))),
    }
}

fn check_partition_degree(a: usize, b: usize, degree: usize) -> Result<()> {
    if a * b != degree {
        return Err(Error::DegreeMismatch {
            expected: degree,
            found: a * b,
        });
    }
    Ok(())
}

fn coset_action(group: &GroupSpec, sub: &GroupSpec, cfg: &RunConfig) -> Result<CosetAction> {
    let g = group.perm_group(cfg.group_cap)?;
    let h = sub.perm_group(cfg.group_cap)?;
    CosetAction::new(&g, &h, cfg.domain_cap)
}

/// The combinatorial rule, with a certified witness when `k`-sets of the
/// degree can be represented.
fn kset_by_type(ct: &CycleType, g: &Permutation, k: usize, cfg: &RunConfig) -> Result<Verdict> {
    let m = ct.degree() as usize;
    if 2 * k > m {
        let a = KSetAction::new(m, k)?;
        return run(&a, g, cfg, Some(Box::new(|| kset_witness(g, k))));
    }
    let decision = kset_decide(ct, k)?;
    let mut v = decision.verdict();
    if decision.has_regular_cycle() && m <= 64 {
        let a = KSetAction::new(m, k)?;
        let x = kset_witness(g, k)?;
        certify(&a, g, &x)?;
        v.witness = Some(a.render_point(&x));
        v.certified = true;
    }
    Ok(v)
}

/// Cycle types of `Sym(m)` with no regular cycle in `action`, in
/// reverse-lexicographic order. K-sets use the combinatorial rule
/// (`m ≤ 60`); uniform partitions use brute force on a representative of
/// each type (`ab ≤ 12`).
pub fn scan_failing_types(action: &ActionSpec, m: u64) -> Result<Vec<CycleType>> {
    match action {
        ActionSpec::KSets(k) => Ok(ksets_theorem_scan(m as usize, *k)?.failing),
        ActionSpec::Partitions(a, b) => {
            check_partition_degree(*a, *b, m as usize)?;
            if a * b > 12 {
                return Err(Error::OutOfRange(format!("partition scans need ab <= 12, got {}", a * b)));
            }
            let act = PartitionAction::new(*a, *b)?;
            let types: Vec<Vec<u64>> = partitions(m).collect();
            let rows = types
                .into_par_iter()
                .map(|parts| {
                    let ct = CycleType::from_parts(parts)?;
                    let v = decide_bruteforce(&act, &ct.representative(), u64::MAX)?;
                    Ok((!v.has_regular_cycle).then_some(ct))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(rows.into_iter().flatten().collect())
        }
        _ => Err(Error::Precondition(format!("scan supports ksets:K and partitions:AxB, got {action}"))),
    }
}

/// Parses `a..b`, `a..=b` (both inclusive) or a single value.
pub fn parse_range(text: &str) -> Result<(u64, u64)> {
    let text = text.trim();
    let (lo, hi) = match text.split_once("..") {
        Some((lo, hi)) => (parse_num(lo, "range start")?, parse_num(hi.trim_start_matches('='), "range end")?),
        None => {
            let v = parse_num(text, "value")?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(Error::Parse(format!("empty range {text:?}")));
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> RunConfig {
        RunConfig::default()
    }

    #[test]
    fn group_specs_round_trip() {
        for s in ["sym:10", "alt:5", "gl:2,3", "agl:2,3", "pgl2:5", "pgammal2:9", "psl2:9", "m10", "diag:alt5,1"] {
            let g: GroupSpec = s.parse().unwrap();
            assert_eq!(g.to_string(), s);
        }
        let g: GroupSpec = "gens:((1 2 3);(1 2))@3".parse().unwrap();
        assert_eq!(g.to_string(), "gens:((1 2 3);(1 2))@3");
        let h: GroupSpec = "gens:(1 2 3);(1 2)@3".parse().unwrap();
        assert_eq!(g, h);
        assert_eq!(h.perm_group(100).unwrap().order(), 6);
        assert!("sym:0".parse::<GroupSpec>().is_err());
        assert!("gl:2,6".parse::<GroupSpec>().is_err());
        assert!("foo:3".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn action_specs_round_trip() {
        for s in ["natural", "ksets:2", "partitions:2x3", "product:natural^2", "product:ksets:2^3", "vectors", "affine", "diagonal", "diagonal:2", "cosets:pgl2:5"] {
            let a: ActionSpec = s.parse().unwrap();
            assert_eq!(a.to_string(), s);
        }
        assert!("ksets:0".parse::<ActionSpec>().is_err());
        assert!("natural:3".parse::<ActionSpec>().is_err());
        assert!("partitions:23".parse::<ActionSpec>().is_err());
    }

    #[test]
    fn membership_by_parity() {
        let alt: GroupSpec = "alt:5".parse().unwrap();
        assert!(alt.contains_perm(&Permutation::parse("(1 2 3)", 5).unwrap(), 100).unwrap());
        assert!(!alt.contains_perm(&Permutation::parse("(1 2)", 5).unwrap(), 100).unwrap());
        let pgl: GroupSpec = "pgl2:5".parse().unwrap();
        assert!(pgl.contains_perm(&Permutation::identity(6), 1000).unwrap());
        assert!(!pgl.contains_perm(&Permutation::parse("(1 2)", 6).unwrap(), 1000).unwrap());
    }

    #[test]
    fn decide_intro_example() {
        let v = decide(&"sym:10".parse().unwrap(), &"ksets:2".parse().unwrap(), "(1 2)(3 4 5)(6 7 8 9 10)", &cfg()).unwrap();
        assert!(!v.has_regular_cycle);
        assert_eq!(v.order, 30);
        assert_eq!(v.method, Method::Bruteforce);
        assert_eq!(v.induced_cycle_type.unwrap().parts(), &[15, 10, 6, 5, 5, 3, 1]);
        let t = decide(&"sym:10".parse().unwrap(), &"ksets:2".parse().unwrap(), "type:5,3,2", &cfg()).unwrap();
        assert_eq!(t.method, Method::KsetCombinatorial);
        assert!(!t.has_regular_cycle);
    }

    #[test]
    fn decide_type_gives_certified_witness() {
        let v = decide(&"sym:12".parse().unwrap(), &"ksets:3".parse().unwrap(), "type:[5,4,3]", &cfg()).unwrap();
        assert!(v.has_regular_cycle && v.certified);
        assert_eq!(v.order, 60);
        assert!(v.witness.is_some());
        assert!(decide(&"pgl2:5".parse().unwrap(), &"ksets:2".parse().unwrap(), "type:5", &cfg()).is_err());
    }

    #[test]
    fn decide_cosets_exception() {
        let v = decide(&"sym:6".parse().unwrap(), &"cosets:pgl2:5".parse().unwrap(), "(1 2 3 4 5 6)", &cfg()).unwrap();
        assert!(!v.has_regular_cycle);
        assert_eq!(v.order, 6);
        assert_eq!(v.induced_cycle_type.unwrap().parts(), &[3, 2, 1]);
        assert_eq!(v.action, "cosets:pgl2:5");
    }

    #[test]
    fn decide_affine_and_vectors() {
        let v = decide(&"agl:2,3".parse().unwrap(), &"affine".parse().unwrap(), "[[1,0],[1,1]]+[0,1]", &cfg()).unwrap();
        assert!(v.has_regular_cycle && v.certified);
        let v = decide(&"gl:2,3".parse().unwrap(), &"vectors".parse().unwrap(), "[[0,1],[1,0]]", &cfg()).unwrap();
        assert!(v.has_regular_cycle);
        assert!(decide(&"gl:2,3".parse().unwrap(), &"vectors".parse().unwrap(), "[[1,1],[1,1]]", &cfg()).is_err());
        assert!(decide(&"gl:2,3".parse().unwrap(), &"ksets:2".parse().unwrap(), "[[1,0],[0,1]]", &cfg()).is_err());
    }

    #[test]
    fn decide_product_and_partitions() {
        let v = decide(&"sym:3".parse().unwrap(), &"product:natural^2".parse().unwrap(), "(1 2);()@(1 2)", &cfg()).unwrap();
        assert!(v.has_regular_cycle);
        assert_eq!(v.order, 4);
        let v = decide(&"sym:4".parse().unwrap(), &"partitions:2x2".parse().unwrap(), "(1 2 3 4)", &cfg()).unwrap();
        assert!(!v.has_regular_cycle);
        assert_eq!(v.induced_order, 2);
        assert!(v.flags.contains(&"unfaithful".to_string()));
        assert!(v.flags.contains(&"unfaithful kernel".to_string()));
    }

    #[test]
    fn constructive_path_beyond_cap() {
        let tiny = RunConfig {
            domain_cap: 1,
            ..RunConfig::default()
        };
        let v = decide(&"sym:12".parse().unwrap(), &"ksets:5".parse().unwrap(), "(1 2 3 4 5 6 7)(8 9 10 11 12)", &tiny).unwrap();
        assert_eq!(v.method, Method::ConstructiveProof);
        assert!(v.certified && v.has_regular_cycle);
        let v = decide(&"sym:8".parse().unwrap(), &"partitions:2x4".parse().unwrap(), "(1 2 3 4 5 6 7 8)", &tiny).unwrap();
        assert_eq!(v.method, Method::ConstructiveProof);
        let err = decide(&"sym:10".parse().unwrap(), &"ksets:2".parse().unwrap(), "(1 2)(3 4 5)(6 7 8 9 10)", &tiny).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
        let err = decide(&"sym:40".parse().unwrap(), &"natural".parse().unwrap(), "(1 2)", &tiny).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { .. }));
    }

    #[test]
    fn fix_union_tier() {
        let mid = RunConfig {
            domain_cap: 10,
            ..RunConfig::default()
        };
        let v = decide(&"sym:10".parse().unwrap(), &"ksets:2".parse().unwrap(), "(1 2 3)", &mid).unwrap();
        assert_eq!(v.method, Method::FixUnion);
        assert!(v.has_regular_cycle);
    }

    #[test]
    fn decide_diagonal() {
        let v = decide(&"diag:alt5,1".parse().unwrap(), &"diagonal".parse().unwrap(), "sigma=(1 2);phi=();t=(),()", &cfg()).unwrap();
        assert_eq!(v.order, 2);
        assert!(v.has_regular_cycle);
        assert_eq!(v.element, "sigma=(1 2);phi=();t=(),()");
        let v = decide(&"diag:alt5,1".parse().unwrap(), &"diagonal:1".parse().unwrap(), "t=(1 2 3),(1 3 2)", &cfg()).unwrap();
        assert!(v.has_regular_cycle);
        assert!(decide(&"diag:alt5,1".parse().unwrap(), &"diagonal:2".parse().unwrap(), "t=(),()", &cfg()).is_err());
        assert!(decide(&"diag:alt5,1".parse().unwrap(), &"diagonal".parse().unwrap(), "t=(1 2),()", &cfg()).is_err());
    }

    #[test]
    fn ranges() {
        assert_eq!(parse_range("4..13").unwrap(), (4, 13));
        assert_eq!(parse_range("4..=13").unwrap(), (4, 13));
        assert_eq!(parse_range("10").unwrap(), (10, 10));
        assert!(parse_range("9..3").is_err());
        assert!(parse_range("x").is_err());
    }
}
