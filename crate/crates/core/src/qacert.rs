//! Skein certificates for quasi-alternating links and L-space double covers.
//!
//! A certificate is a tree over links of the `A`, `B` and `L` families.
//! Each node carries the link's determinant and one justification:
//!
//! * `BASE`: a whitelisted axiom applies to the link;
//! * `SKEIN`: both resolutions at the first starred crossing region are
//!   certified and their determinants add up;
//! * `IDENTIFY`: the link equals another link by a whitelisted rule;
//! * `REF`: the link was certified earlier in the traversal.
//!
//! [`verify`] re-derives every determinant from the closed-form tables and
//! never trusts the generator.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::goeritz::{identified_row, row_poly, table_formula, Family, Resolution, Slot};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinkFamily {
    A,
    B,
    L,
    Named,
}

impl LinkFamily {
    fn label(self) -> &'static str {
        match self {
            LinkFamily::A => "A",
            LinkFamily::B => "B",
            LinkFamily::L => "L",
            LinkFamily::Named => "NAMED",
        }
    }

    fn table_family(self) -> Option<Family> {
        match self {
            LinkFamily::A => Some(Family::A),
            LinkFamily::B => Some(Family::B),
            LinkFamily::L => Some(Family::L),
            LinkFamily::Named => None,
        }
    }
}

/// A member of one of the families, or a named link.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinkId {
    pub family: LinkFamily,
    pub params: Vec<i64>,
    pub resolution: Resolution,
    pub name: Option<String>,
}

/// Named links with their determinants.
pub const NAMED_LINKS: &[(&str, i64)] =
    &[("unknot", 1), ("T(3,4)", 3), ("P(2,-3,-2)", 4), ("T(3,5)", 1), ("P(2,-3,-4)", 2)];

impl LinkId {
    pub fn a(q: i64, s: i64, t: i64, resolution: Resolution) -> LinkId {
        LinkId { family: LinkFamily::A, params: vec![q, s, t], resolution, name: None }
    }

    pub fn b(q: i64, s: i64, t: i64, resolution: Resolution) -> LinkId {
        LinkId { family: LinkFamily::B, params: vec![q, s, t], resolution, name: None }
    }

    /// `L(q, s, t, l)`; positive parameters with `l = 1` give the `B` member.
    pub fn l(q: i64, s: i64, t: i64, l: i64, resolution: Resolution) -> LinkId {
        if l == 1 && q > 0 && s > 0 && t > 0 {
            return LinkId::b(q, s, t, resolution);
        }
        LinkId { family: LinkFamily::L, params: vec![q, s, t, l], resolution, name: None }
    }

    pub fn named(name: &str) -> LinkId {
        LinkId {
            family: LinkFamily::Named,
            params: Vec::new(),
            resolution: Resolution::STAR,
            name: Some(name.to_string()),
        }
    }

    fn with_resolution(&self, resolution: Resolution) -> LinkId {
        LinkId { resolution, ..self.clone() }
    }

    /// `(q, s, t, l)` with `l = 1` for `B`.
    fn qstl(&self) -> Option<(i64, i64, i64, i64)> {
        match (self.family, self.params.as_slice()) {
            (LinkFamily::B, &[q, s, t]) => Some((q, s, t, 1)),
            (LinkFamily::L, &[q, s, t, l]) => Some((q, s, t, l)),
            _ => None,
        }
    }

    fn all_positive(&self) -> bool {
        self.params.iter().all(|&p| p > 0)
    }

    fn well_formed(&self) -> std::result::Result<(), String> {
        match self.family {
            LinkFamily::Named => {
                let name = self.name.as_deref().unwrap_or("");
                if !NAMED_LINKS.iter().any(|(n, _)| *n == name) {
                    return Err(format!("unknown named link '{name}'"));
                }
                if !self.params.is_empty() || !self.resolution.is_star() {
                    return Err("named links take no parameters".into());
                }
            }
            LinkFamily::A | LinkFamily::B => {
                if self.params.len() != 3 || !self.all_positive() {
                    return Err(format!("{} needs three positive parameters", self.family.label()));
                }
            }
            LinkFamily::L => {
                if self.params.len() != 4 || self.params.contains(&0) {
                    return Err("L needs four nonzero parameters".into());
                }
                if self.params[3] == 1 && self.all_positive() {
                    return Err("L with l = 1 must be written as B".into());
                }
            }
        }
        if self.family != LinkFamily::Named && self.name.is_some() {
            return Err("only named links carry a name".into());
        }
        Ok(())
    }
}

impl fmt::Display for LinkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(name) = &self.name {
            return f.write_str(name);
        }
        let params: Vec<String> = self.params.iter().map(|p| p.to_string()).collect();
        write!(f, "{}({}; {})", self.family.label(), params.join(","), self.resolution.glyphs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    QuasiAlternating,
    LSpace,
}

impl Claim {
    pub fn label(self) -> &'static str {
        match self {
            Claim::QuasiAlternating => "QUASI_ALTERNATING",
            Claim::LSpace => "L_SPACE",
        }
    }

    fn from_label(s: &str) -> Option<Claim> {
        match s {
            "QUASI_ALTERNATING" => Some(Claim::QuasiAlternating),
            "L_SPACE" => Some(Claim::LSpace),
            _ => None,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A trusted fact: the claim it supplies and where it comes from.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Axiom {
    pub name: String,
    pub claim: Claim,
    pub citation: String,
}

const WHITELIST: &[(&str, Claim, &str)] = &[
    ("unknot", Claim::QuasiAlternating, "Definition 2.3(1)"),
    ("ALTERNATING", Claim::QuasiAlternating, "Section 5 case (2)"),
    ("PETERS_INF", Claim::QuasiAlternating, "Lemma 5.2"),
    ("PETERS_0INF", Claim::QuasiAlternating, "Lemma 5.2"),
    ("PETERS_00", Claim::QuasiAlternating, "Lemma 5.2"),
    ("T(3,4)", Claim::LSpace, "Lemma 5.3(6)"),
    ("P(2,-3,-2)", Claim::LSpace, "Lemma 5.3(6)"),
    ("T(3,5)", Claim::LSpace, "Lemma 5.8(2)"),
    ("P(2,-3,-4)", Claim::LSpace, "Lemma 5.8(2)"),
    ("GAP_E1", Claim::LSpace, "Claim 5.6"),
    ("GAP_E2", Claim::LSpace, "Claim 5.6"),
    ("GAP_E3", Claim::LSpace, "Claim 5.14"),
    ("CASE3_REDUCTION", Claim::LSpace, "Section 5 case (3)"),
    ("CASE4_REDUCTION", Claim::LSpace, "Section 5 case (4)"),
    ("CASE7_REDUCTION", Claim::LSpace, "Section 5 case (7)"),
    ("CASE8_REDUCTION", Claim::LSpace, "Section 5 case (8)"),
];

/// The axiom whitelist.
pub fn whitelist() -> Vec<Axiom> {
    WHITELIST
        .iter()
        .map(|&(name, claim, citation)| Axiom {
            name: name.to_string(),
            claim,
            citation: citation.to_string(),
        })
        .collect()
}

pub fn axiom(name: &str) -> Option<Axiom> {
    whitelist().into_iter().find(|a| a.name == name)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeKind {
    Base { axiom: String },
    Skein { zero: Box<CertNode>, inf: Box<CertNode> },
    Identify { target: LinkId, citation: String, child: Box<CertNode> },
    Ref,
}

impl NodeKind {
    pub fn label(&self) -> &'static str {
        match self {
            NodeKind::Base { .. } => "BASE",
            NodeKind::Skein { .. } => "SKEIN",
            NodeKind::Identify { .. } => "IDENTIFY",
            NodeKind::Ref => "REF",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertNode {
    pub link: LinkId,
    pub det: BigInt,
    pub kind: NodeKind,
}

impl CertNode {
    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        1 + match &self.kind {
            NodeKind::Skein { zero, inf } => zero.size() + inf.size(),
            NodeKind::Identify { child, .. } => child.size(),
            _ => 0,
        }
    }

    pub fn depth(&self) -> usize {
        1 + match &self.kind {
            NodeKind::Skein { zero, inf } => zero.depth().max(inf.depth()),
            NodeKind::Identify { child, .. } => child.depth(),
            _ => 0,
        }
    }

    /// Pre-order walk with paths such as `root.zero.child`.
    pub fn walk(&self) -> Vec<(String, &CertNode)> {
        let mut out = Vec::new();
        self.walk_into("root".to_string(), &mut out);
        out
    }

    fn walk_into<'a>(&'a self, path: String, out: &mut Vec<(String, &'a CertNode)>) {
        out.push((path.clone(), self));
        match &self.kind {
            NodeKind::Skein { zero, inf } => {
                zero.walk_into(format!("{path}.zero"), out);
                inf.walk_into(format!("{path}.inf"), out);
            }
            NodeKind::Identify { child, .. } => child.walk_into(format!("{path}.child"), out),
            _ => {}
        }
    }

    /// Mutable node at a path produced by [`CertNode::walk`].
    pub fn at_path_mut(&mut self, path: &str) -> Option<&mut CertNode> {
        let mut node = self;
        for step in path.split('.').skip(1) {
            node = match (&mut node.kind, step) {
                (NodeKind::Skein { zero, .. }, "zero") => zero,
                (NodeKind::Skein { inf, .. }, "inf") => inf,
                (NodeKind::Identify { child, .. }, "child") => child,
                _ => return None,
            };
        }
        Some(node)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub claim: Claim,
    pub root: CertNode,
    pub axioms: Vec<Axiom>,
}

impl Certificate {
    pub fn size(&self) -> usize {
        self.root.size()
    }

    /// Axiom names cited by `BASE` nodes, in walk order without repeats.
    pub fn base_axioms(&self) -> Vec<String> {
        let mut seen = Vec::new();
        for (_, node) in self.root.walk() {
            if let NodeKind::Base { axiom } = &node.kind {
                if !seen.contains(axiom) {
                    seen.push(axiom.clone());
                }
            }
        }
        seen
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject { path: String, reason: String },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => f.write_str("ACCEPT"),
            Verdict::Reject { path, reason } => write!(f, "REJECT at {path}: {reason}"),
        }
    }
}

// ---------------------------------------------------------------------------
// Rules shared by generator and verifier

fn res(code: &str) -> Resolution {
    code.parse().expect("resolution code")
}

fn star() -> Resolution {
    Resolution::STAR
}

/// Sign pattern of `(q, s, t, l)` as `+`/`-` characters.
fn sign_pattern(p: &[i64]) -> String {
    p.iter().map(|&v| if v > 0 { '+' } else { '-' }).collect()
}

/// The eight sign cases handled directly; the other eight are their mirrors.
const SIGN_CASES: &[(&str, u8)] = &[
    ("++++", 1),
    ("-+-+", 2),
    ("+-++", 3),
    ("---+", 4),
    ("++-+", 5),
    ("+---", 6),
    ("+--+", 7),
    ("--++", 8),
];

fn sign_case(p: &[i64]) -> Option<u8> {
    let pat = sign_pattern(p);
    SIGN_CASES.iter().find(|(c, _)| *c == pat).map(|&(_, n)| n)
}

/// Whether the `(q,s,t,l) -> (l,t,s,q)` swap points toward the canonical
/// orientation for this `L`/`B` star link.
fn l_swap_applies(q: i64, s: i64, t: i64, l: i64) -> bool {
    if q > 0 && s > 0 && t > 0 && l > 0 {
        (t == 1 && s > 1) || (s == 1 && t == 1 && l < q)
    } else {
        matches!(sign_case(&[q, s, t, l]), Some(5) | Some(6))
    }
}

fn is_mirror_regime(p: &[i64]) -> bool {
    sign_case(p).is_none()
}

/// Every `(citation, target)` an `IDENTIFY` edge may take from `link`.
pub fn identify_targets(link: &LinkId) -> Vec<(&'static str, LinkId)> {
    let mut out = Vec::new();
    let code = link.resolution.glyphs();
    match link.family {
        LinkFamily::A => {
            let (q, s, t) = (link.params[0], link.params[1], link.params[2]);
            let a = |t: i64, r: &str| LinkId::a(q, s, t, res(r));
            match code.as_str() {
                "∞00" | "0∞0" => out.push(("Lemma 5.3(1)", a(t, "00*"))),
                "∞0∞" | "∞∞0" => out.push(("Lemma 5.3(2)", a(t, "0∞∞"))),
                "∞∞∞" if t >= 2 => out.push(("Lemma 5.3(3)", a(t - 1, "***"))),
                "0∞∞" if t >= 2 => out.push(("Lemma 5.3(4)", a(t - 1, "0**"))),
                "00*" if t >= 2 => out.push(("Lemma 5.3(5)", a(1, "00*"))),
                _ => {}
            }
            if (q, s, t) == (1, 1, 1) {
                match code.as_str() {
                    "***" => out.push(("Lemma 5.3(6)", LinkId::named("T(3,4)"))),
                    "0**" => out.push(("Lemma 5.3(6)", LinkId::named("P(2,-3,-2)"))),
                    _ => {}
                }
            }
            if code == "***" && s == 1 && t < q {
                out.push(("Claim 5.6 symmetry", LinkId::a(t, 1, q, star())));
            }
        }
        LinkFamily::B | LinkFamily::L => {
            let (q, s, t, l) = link.qstl().expect("family parameters");
            if link.all_positive() && l == 1 {
                let a = |r: &str| LinkId::a(q, s, t, res(r));
                match code.as_str() {
                    "00*" => out.push(("Lemma 5.8(1)", a("***"))),
                    "∞**" => out.push(("Lemma 5.8(1)", a("∞∞*"))),
                    "0∞*" => out.push(("Lemma 5.8(1)", a("∞**"))),
                    _ => {}
                }
                if (q, s, t) == (1, 1, 1) {
                    match code.as_str() {
                        "***" => out.push(("Lemma 5.8(2)", LinkId::named("T(3,5)"))),
                        "0**" => out.push(("Lemma 5.8(2)", LinkId::named("P(2,-3,-4)"))),
                        _ => {}
                    }
                }
            } else if link.all_positive() {
                let lk = |l: i64, r: &str| LinkId::l(q, s, t, l, res(r));
                match code.as_str() {
                    "∞00" | "0∞0" => out.push(("Lemma 5.11(1)", lk(l, "00*"))),
                    "∞0∞" | "∞∞0" => out.push(("Lemma 5.11(2)", lk(l, "0∞∞"))),
                    "∞∞∞" => out.push(("Lemma 5.11(3)", lk(l - 1, "***"))),
                    "0∞∞" => out.push(("Lemma 5.11(4)", lk(l - 1, "0**"))),
                    "00*" => out.push(("Lemma 5.11(5)", lk(l - 1, "00*"))),
                    _ => {}
                }
            }
            if code == "***" {
                if l_swap_applies(q, s, t, l) {
                    out.push(("Claim 5.15 symmetry", LinkId::l(l, t, s, q, star())));
                }
                if is_mirror_regime(&[q, s, t, l]) {
                    out.push(("mirror", LinkId::l(-q, -s, -t, -l, star())));
                }
            }
        }
        LinkFamily::Named => {}
    }
    out
}

/// Whether a whitelisted axiom applies to `link`.
pub fn axiom_applies(name: &str, link: &LinkId) -> bool {
    let code = link.resolution.glyphs();
    if link.family == LinkFamily::Named {
        return link.name.as_deref() == Some(name);
    }
    let p = link.params.as_slice();
    match (name, link.family) {
        ("PETERS_INF" | "PETERS_0INF" | "PETERS_00", LinkFamily::A) => {
            let want = match name {
                "PETERS_INF" => "∞**",
                "PETERS_0INF" => "0∞*",
                _ => "00*",
            };
            p[2] == 1 && p[1] > 1 && code == want
        }
        ("GAP_E1", LinkFamily::A) => p[1] == 1 && p[2] == 1 && code == "00*",
        ("GAP_E2", LinkFamily::A) => p[1] == 1 && p[2] == 1 && p[0] > 1 && code == "0∞*",
        ("GAP_E3", LinkFamily::B) => p[1] == 1 && p[2] == 1 && p[0] > 1 && code == "0**",
        ("ALTERNATING", LinkFamily::L) => code == "***" && sign_case(p) == Some(2),
        (case, LinkFamily::L) if case.starts_with("CASE") && case.ends_with("_REDUCTION") => {
            let n: Option<u8> = case[4..case.len() - 10].parse().ok();
            code == "***" && n.is_some() && sign_case(p) == n && matches!(n, Some(3 | 4 | 7 | 8))
        }
        _ => false,
    }
}

/// The determinant the tables assign to `link`, if any.
pub fn expected_det(link: &LinkId) -> Option<BigInt> {
    if link.family == LinkFamily::Named {
        let name = link.name.as_deref()?;
        return NAMED_LINKS.iter().find(|(n, _)| *n == name).map(|&(_, d)| BigInt::from(d));
    }
    let family = link.family.table_family()?;
    if !link.all_positive() {
        if link.family == LinkFamily::L && link.resolution.is_star() {
            return table_formula(Family::L, star(), &link.params).ok();
        }
        return None;
    }
    let code = link.resolution.glyphs();
    if link.family == LinkFamily::A && link.params[2] == 1 {
        const T_ONE_ROWS: [&str; 5] = ["***", "0**", "∞**", "0∞*", "00*"];
        if !T_ONE_ROWS.contains(&code.as_str()) {
            return None;
        }
    }
    if let Ok(d) = table_formula(family, link.resolution, &link.params) {
        return Some(d);
    }
    identified_row(link.resolution)?;
    let poly = row_poly(family, link.resolution).ok()?;
    let names = ["q", "s", "t", "l"];
    let env: BTreeMap<String, BigInt> =
        names.iter().zip(&link.params).map(|(n, v)| (n.to_string(), BigInt::from(*v))).collect();
    poly.eval(&env).ok().map(|v| v.abs())
}

// ---------------------------------------------------------------------------
// Generation

struct Generator {
    done: HashMap<LinkId, BigInt>,
    axioms: BTreeSet<String>,
}

impl Generator {
    fn new() -> Self {
        Generator { done: HashMap::new(), axioms: BTreeSet::new() }
    }

    fn det(link: &LinkId) -> Result<BigInt> {
        expected_det(link).ok_or_else(|| Error::NotTabulated(link.to_string()))
    }

    fn base(&mut self, link: LinkId, name: &str) -> Result<CertNode> {
        self.axioms.insert(name.to_string());
        Ok(CertNode { det: Self::det(&link)?, link, kind: NodeKind::Base { axiom: name.to_string() } })
    }

    fn identify(&mut self, link: LinkId, citation: &str, target: LinkId) -> Result<CertNode> {
        let child = self.node(target.clone())?;
        Ok(CertNode {
            det: child.det.clone(),
            link,
            kind: NodeKind::Identify { target, citation: citation.to_string(), child: Box::new(child) },
        })
    }

    fn skein(&mut self, link: LinkId) -> Result<CertNode> {
        let zero_res = link.resolution.resolve_first(Slot::Zero);
        let inf_res = link.resolution.resolve_first(Slot::Infinity);
        let (Some(zr), Some(ir)) = (zero_res, inf_res) else {
            return Err(Error::UnsupportedRegime(format!("no rule certifies {link}")));
        };
        let zero = self.node(link.with_resolution(zr))?;
        let inf = self.node(link.with_resolution(ir))?;
        Ok(CertNode {
            det: &zero.det + &inf.det,
            link,
            kind: NodeKind::Skein { zero: Box::new(zero), inf: Box::new(inf) },
        })
    }

    fn node(&mut self, link: LinkId) -> Result<CertNode> {
        if let Some(det) = self.done.get(&link) {
            return Ok(CertNode { link, det: det.clone(), kind: NodeKind::Ref });
        }
        let node = self.fresh(link.clone())?;
        self.done.insert(link, node.det.clone());
        Ok(node)
    }

    fn fresh(&mut self, link: LinkId) -> Result<CertNode> {
        if link.family == LinkFamily::Named {
            let name = link.name.clone().unwrap_or_default();
            return self.base(link, &name);
        }
        if let Some(name) = self.base_rule(&link) {
            return self.base(link, name);
        }
        // Named links and shifts first, then the symmetry swap, then the mirror.
        if let Some((citation, target)) = identify_targets(&link).into_iter().next() {
            return self.identify(link, citation, target);
        }
        if !link.all_positive() {
            return Err(Error::UnsupportedRegime(format!("no rule certifies {link}")));
        }
        self.skein(link)
    }

    fn base_rule(&self, link: &LinkId) -> Option<&'static str> {
        WHITELIST.iter().map(|w| w.0).find(|name| axiom_applies(name, link))
    }

    fn finish(self, root: CertNode) -> Certificate {
        let axioms: Vec<Axiom> = self.axioms.iter().filter_map(|n| axiom(n)).collect();
        let claim = if axioms.iter().all(|a| a.claim == Claim::QuasiAlternating) {
            Claim::QuasiAlternating
        } else {
            Claim::LSpace
        };
        Certificate { claim, root, axioms }
    }
}

/// Certificate for `A(q, s, t; *, *, *)`: quasi-alternating for `s > 1`,
/// L-space double cover for `s = 1`.
pub fn generate_a_cert(q: i64, s: i64, t: i64) -> Result<Certificate> {
    if q < 1 || s < 1 || t < 1 {
        return Err(Error::UnsupportedRegime(format!("A needs positive parameters, got ({q},{s},{t})")));
    }
    let mut g = Generator::new();
    let root = g.node(LinkId::a(q, s, t, star()))?;
    Ok(g.finish(root))
}

/// Certificate for `L(q, s, t, l; *, *, *)` in any sign regime.
pub fn generate_l_cert(q: i64, s: i64, t: i64, l: i64) -> Result<Certificate> {
    if [q, s, t, l].contains(&0) {
        return Err(invalid(format!("parameters must be nonzero, got ({q},{s},{t},{l})")));
    }
    let mut g = Generator::new();
    let root = g.node(LinkId::l(q, s, t, l, star()))?;
    Ok(g.finish(root))
}

// ---------------------------------------------------------------------------
// Verification

struct Checker<'a> {
    claim: Claim,
    listed: &'a BTreeMap<String, Axiom>,
    done: HashMap<LinkId, BigInt>,
    used: BTreeSet<String>,
}

type Check = std::result::Result<(), (String, String)>;

fn fail(path: &str, reason: impl Into<String>) -> Check {
    Err((path.to_string(), reason.into()))
}

impl Checker<'_> {
    fn check(&mut self, node: &CertNode, path: &str) -> Check {
        if let Err(e) = node.link.well_formed() {
            return fail(path, format!("malformed link {}: {e}", node.link));
        }
        if !node.det.is_positive() {
            return fail(path, format!("determinant {} is not positive", node.det));
        }
        if let NodeKind::Ref = node.kind {
            return match self.done.get(&node.link) {
                Some(d) if *d == node.det => Ok(()),
                Some(d) => fail(path, format!("REF det {} differs from certified {d}", node.det)),
                None => fail(path, format!("REF to {} which is not yet certified", node.link)),
            };
        }
        match expected_det(&node.link) {
            Some(d) if d == node.det => {}
            Some(d) => return fail(path, format!("det {} of {} but tables give {d}", node.det, node.link)),
            None => return fail(path, format!("no tabulated determinant for {}", node.link)),
        }
        match &node.kind {
            NodeKind::Base { axiom: name } => {
                let Some(ax) = axiom(name) else {
                    return fail(path, format!("axiom '{name}' is not whitelisted"));
                };
                if self.claim == Claim::QuasiAlternating && ax.claim != Claim::QuasiAlternating {
                    return fail(path, format!("axiom '{name}' only supports {}", ax.claim));
                }
                if self.listed.get(name) != Some(&ax) {
                    return fail(path, format!("axiom '{name}' missing from the axiom list"));
                }
                if !axiom_applies(name, &node.link) {
                    return fail(path, format!("axiom '{name}' does not apply to {}", node.link));
                }
                self.used.insert(name.clone());
            }
            NodeKind::Skein { zero, inf } => {
                let family_ok = node.link.family != LinkFamily::Named && node.link.all_positive();
                let zr = node.link.resolution.resolve_first(Slot::Zero);
                let ir = node.link.resolution.resolve_first(Slot::Infinity);
                let (Some(zr), Some(ir)) = (zr, ir) else {
                    return fail(path, "SKEIN on a fully resolved link");
                };
                if !family_ok {
                    return fail(path, format!("SKEIN not available for {}", node.link));
                }
                if zero.link != node.link.with_resolution(zr) || inf.link != node.link.with_resolution(ir) {
                    return fail(path, "SKEIN children are not the two resolutions of the first star");
                }
                if zero.det.is_zero() || inf.det.is_zero() || &zero.det + &inf.det != node.det {
                    return fail(path, format!("{} != {} + {}", node.det, zero.det, inf.det));
                }
                self.check(zero, &format!("{path}.zero"))?;
                self.check(inf, &format!("{path}.inf"))?;
            }
            NodeKind::Identify { target, citation, child } => {
                let allowed = identify_targets(&node.link);
                if !allowed.iter().any(|(c, t)| c == citation && t == target) {
                    return fail(path, format!("IDENTIFY {} -> {target} by '{citation}' is not whitelisted", node.link));
                }
                if child.link != *target {
                    return fail(path, "IDENTIFY child is not the target link");
                }
                if child.det != node.det {
                    return fail(path, "IDENTIFY changes the determinant");
                }
                self.check(child, &format!("{path}.child"))?;
            }
            NodeKind::Ref => unreachable!(),
        }
        self.done.insert(node.link.clone(), node.det.clone());
        Ok(())
    }
}

/// Check a certificate; a rejection names the first offending node.
pub fn verify(c: &Certificate) -> Verdict {
    let mut listed = BTreeMap::new();
    for (i, a) in c.axioms.iter().enumerate() {
        if axiom(&a.name).as_ref() != Some(a) {
            return Verdict::Reject {
                path: format!("axioms[{i}]"),
                reason: format!("'{}' does not match the whitelist", a.name),
            };
        }
        if c.claim == Claim::QuasiAlternating && a.claim != Claim::QuasiAlternating {
            return Verdict::Reject {
                path: format!("axioms[{i}]"),
                reason: format!("'{}' is not a {} axiom", a.name, c.claim),
            };
        }
        listed.insert(a.name.clone(), a.clone());
    }
    let mut checker = Checker { claim: c.claim, listed: &listed, done: HashMap::new(), used: BTreeSet::new() };
    if let Err((path, reason)) = checker.check(&c.root, "root") {
        return Verdict::Reject { path, reason };
    }
    if let Some(extra) = listed.keys().find(|k| !checker.used.contains(*k)) {
        return Verdict::Reject { path: "axioms".into(), reason: format!("'{extra}' is listed but unused") };
    }
    Verdict::Accept
}

// ---------------------------------------------------------------------------
// Mutation

const CITATIONS: &[&str] = &[
    "Lemma 5.3(1)",
    "Lemma 5.3(2)",
    "Lemma 5.3(3)",
    "Lemma 5.3(4)",
    "Lemma 5.3(5)",
    "Lemma 5.3(6)",
    "Lemma 5.8(1)",
    "Lemma 5.8(2)",
    "Lemma 5.11(1)",
    "Lemma 5.11(2)",
    "Lemma 5.11(3)",
    "Lemma 5.11(4)",
    "Lemma 5.11(5)",
    "Claim 5.6 symmetry",
    "Claim 5.15 symmetry",
    "mirror",
];

fn link_mutations(l: &LinkId) -> Vec<(String, LinkId)> {
    let mut out = Vec::new();
    for i in 0..l.params.len() {
        for d in [-1, 1] {
            let mut m = l.clone();
            m.params[i] += d;
            if m.params[i] != 0 {
                out.push((format!("params[{i}] {d:+}"), m));
            }
        }
    }
    if l.family != LinkFamily::Named {
        for i in 0..3 {
            for slot in [Slot::Star, Slot::Zero, Slot::Infinity] {
                if l.resolution.0[i] != slot {
                    let mut m = l.clone();
                    m.resolution.0[i] = slot;
                    out.push((format!("resolution {}", m.resolution.glyphs()), m));
                }
            }
        }
    }
    for &(name, _) in NAMED_LINKS {
        if l.name.as_deref().is_some_and(|n| n != name) {
            let mut m = l.clone();
            m.name = Some(name.to_string());
            out.push((format!("name {name}"), m));
        }
    }
    out
}

/// Every certificate that differs from `c` in exactly one field: a node's
/// determinant, link, axiom name, `IDENTIFY` target or citation, an entry
/// of the axiom list, or a weaker-to-stronger claim.
pub fn single_field_mutations(c: &Certificate) -> Vec<(String, Certificate)> {
    let mut out = Vec::new();
    let paths: Vec<(String, CertNode)> = c.root.walk().into_iter().map(|(p, n)| (p, n.clone())).collect();
    let mut push = |label: String, f: &dyn Fn(&mut CertNode)| {
        let mut m = c.clone();
        let path = label.split(' ').next().expect("path").to_string();
        f(m.root.at_path_mut(&path).expect("walked path"));
        out.push((label, m));
    };
    for (path, node) in &paths {
        for d in [-1i64, 1] {
            push(format!("{path} det {d:+}"), &|n| n.det += d);
        }
        for (what, link) in link_mutations(&node.link) {
            push(format!("{path} link {what}"), &|n| n.link = link.clone());
        }
        match &node.kind {
            NodeKind::Base { axiom } => {
                for &(name, _, _) in WHITELIST.iter().filter(|w| w.0 != axiom) {
                    push(format!("{path} axiom {name}"), &|n| n.kind = NodeKind::Base { axiom: name.to_string() });
                }
            }
            NodeKind::Identify { target, citation, .. } => {
                for (what, t) in link_mutations(target) {
                    push(format!("{path} target {what}"), &|n| {
                        if let NodeKind::Identify { target, .. } = &mut n.kind {
                            *target = t.clone();
                        }
                    });
                }
                for &other in CITATIONS.iter().filter(|x| *x != citation) {
                    push(format!("{path} citation {other}"), &|n| {
                        if let NodeKind::Identify { citation, .. } = &mut n.kind {
                            *citation = other.to_string();
                        }
                    });
                }
            }
            _ => {}
        }
    }
    for i in 0..c.axioms.len() {
        let mut m = c.clone();
        m.axioms.remove(i);
        out.push((format!("axioms[{i}] removed"), m));
        let mut m = c.clone();
        m.axioms[i].citation.push('?');
        out.push((format!("axioms[{i}] citation"), m));
        let mut m = c.clone();
        m.axioms[i].claim =
            if m.axioms[i].claim == Claim::LSpace { Claim::QuasiAlternating } else { Claim::LSpace };
        out.push((format!("axioms[{i}] claim"), m));
    }
    if c.claim == Claim::LSpace {
        let mut m = c.clone();
        m.claim = Claim::QuasiAlternating;
        out.push(("claim QUASI_ALTERNATING".into(), m));
    }
    out
}

// ---------------------------------------------------------------------------
// JSON

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLink {
    family: String,
    params: Vec<i64>,
    resolution: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    name: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawNode {
    link: RawLink,
    det: String,
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    axiom: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<RawLink>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    citation: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    children: Option<Vec<RawNode>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxiom {
    name: String,
    claim: String,
    citation: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCert {
    claim: String,
    root: RawNode,
    axioms: Vec<RawAxiom>,
}

fn link_to_raw(l: &LinkId) -> RawLink {
    RawLink {
        family: l.family.label().to_string(),
        params: l.params.clone(),
        resolution: l.resolution.to_string(),
        name: l.name.clone(),
    }
}

fn link_from_raw(r: RawLink) -> Result<LinkId> {
    let family = match r.family.as_str() {
        "A" => LinkFamily::A,
        "B" => LinkFamily::B,
        "L" => LinkFamily::L,
        "NAMED" => LinkFamily::Named,
        other => return Err(invalid(format!("unknown family '{other}'"))),
    };
    Ok(LinkId { family, params: r.params, resolution: r.resolution.parse()?, name: r.name })
}

fn node_to_raw(n: &CertNode) -> RawNode {
    let mut raw = RawNode {
        link: link_to_raw(&n.link),
        det: n.det.to_string(),
        kind: n.kind.label().to_string(),
        axiom: None,
        target: None,
        citation: None,
        children: None,
    };
    match &n.kind {
        NodeKind::Base { axiom } => raw.axiom = Some(axiom.clone()),
        NodeKind::Skein { zero, inf } => raw.children = Some(vec![node_to_raw(zero), node_to_raw(inf)]),
        NodeKind::Identify { target, citation, child } => {
            raw.target = Some(link_to_raw(target));
            raw.citation = Some(citation.clone());
            raw.children = Some(vec![node_to_raw(child)]);
        }
        NodeKind::Ref => {}
    }
    raw
}

fn node_from_raw(r: RawNode) -> Result<CertNode> {
    let link = link_from_raw(r.link)?;
    let det: BigInt = r.det.parse().map_err(|_| invalid(format!("bad determinant '{}'", r.det)))?;
    let mut children = r.children.unwrap_or_default().into_iter();
    let kind = match r.kind.as_str() {
        "BASE" => NodeKind::Base { axiom: r.axiom.ok_or_else(|| invalid("BASE node without axiom"))? },
        "SKEIN" => match (children.next(), children.next(), children.next()) {
            (Some(z), Some(i), None) => {
                NodeKind::Skein { zero: Box::new(node_from_raw(z)?), inf: Box::new(node_from_raw(i)?) }
            }
            _ => return Err(invalid("SKEIN node needs exactly two children")),
        },
        "IDENTIFY" => {
            let target = link_from_raw(r.target.ok_or_else(|| invalid("IDENTIFY without target"))?)?;
            let citation = r.citation.ok_or_else(|| invalid("IDENTIFY without citation"))?;
            let (Some(c), None) = (children.next(), children.next()) else {
                return Err(invalid("IDENTIFY node needs exactly one child"));
            };
            NodeKind::Identify { target, citation, child: Box::new(node_from_raw(c)?) }
        }
        "REF" => NodeKind::Ref,
        other => return Err(invalid(format!("unknown node kind '{other}'"))),
    };
    Ok(CertNode { link, det, kind })
}

/// Pretty JSON with a fixed field order and a trailing newline.
pub fn serialize(c: &Certificate) -> String {
    let mut axioms = c.axioms.clone();
    axioms.sort();
    let raw = RawCert {
        claim: c.claim.label().to_string(),
        root: node_to_raw(&c.root),
        axioms: axioms
            .into_iter()
            .map(|a| RawAxiom { name: a.name, claim: a.claim.label().to_string(), citation: a.citation })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&raw).expect("certificate serializes");
    s.push('\n');
    s
}

pub fn deserialize(bytes: &[u8]) -> Result<Certificate> {
    let mut de = serde_json::Deserializer::from_slice(bytes);
    de.disable_recursion_limit();
    let raw = RawCert::deserialize(&mut de)
        .and_then(|r| de.end().map(|_| r))
        .map_err(|e| Error::Parse { line: e.line(), col: e.column(), msg: e.to_string() })?;
    let claim = Claim::from_label(&raw.claim).ok_or_else(|| invalid(format!("unknown claim '{}'", raw.claim)))?;
    let axioms = raw
        .axioms
        .into_iter()
        .map(|a| {
            let claim = Claim::from_label(&a.claim).ok_or_else(|| invalid(format!("unknown claim '{}'", a.claim)))?;
            Ok(Axiom { name: a.name, claim, citation: a.citation })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Certificate { claim, root: node_from_raw(raw.root)?, axioms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn accept(c: &Certificate) {
        assert_eq!(verify(c), Verdict::Accept, "{}", serialize(c));
    }

    #[test]
    fn a_quasi_alternating_at_s_two() {
        let c = generate_a_cert(1, 2, 1).unwrap();
        assert_eq!(c.claim, Claim::QuasiAlternating);
        accept(&c);
    }

    #[test]
    fn a_lspace_base_case() {
        let c = generate_a_cert(1, 1, 1).unwrap();
        assert_eq!(c.claim, Claim::LSpace);
        let names = c.base_axioms();
        assert!(names.contains(&"T(3,4)".to_string()));
        accept(&c);
        assert_eq!(c.root.det, BigInt::from(3));
        let c = generate_a_cert(1, 1, 2).unwrap();
        let names = c.base_axioms();
        assert!(names.contains(&"T(3,4)".to_string()) && names.contains(&"P(2,-3,-2)".to_string()));
        accept(&c);
    }

    #[test]
    fn l_grounded_at_b_bases() {
        let c = generate_l_cert(1, 1, 1, 2).unwrap();
        let names = c.base_axioms();
        assert!(names.contains(&"T(3,5)".to_string()) && names.contains(&"P(2,-3,-4)".to_string()));
        accept(&c);
    }

    #[test]
    fn a_two_one_three() {
        let c = generate_a_cert(2, 1, 3).unwrap();
        assert_eq!(c.claim, Claim::LSpace);
        accept(&c);
    }

    #[test]
    fn l_examples() {
        let c = generate_l_cert(1, 1, 1, 1).unwrap();
        assert_eq!(c.claim, Claim::LSpace);
        assert_eq!(c.root.link, LinkId::b(1, 1, 1, star()));
        accept(&c);
        let c = generate_l_cert(1, 2, 2, 1).unwrap();
        assert_eq!(c.claim, Claim::QuasiAlternating);
        accept(&c);
        let c = generate_l_cert(-1, 1, -1, 1).unwrap();
        assert_eq!(c.size(), 1);
        assert_eq!(c.root.kind, NodeKind::Base { axiom: "ALTERNATING".into() });
        accept(&c);
    }

    #[test]
    fn every_sign_regime_verifies() {
        for mask in 0..16u32 {
            let p: Vec<i64> = (0..4).map(|i| if mask >> i & 1 == 1 { -2 } else { 2 }).collect();
            let c = generate_l_cert(p[0], p[1], p[2], p[3]).unwrap();
            accept(&c);
        }
    }

    #[test]
    fn positive_grid_verifies() {
        for q in 1..=3 {
            for s in 1..=3 {
                for t in 1..=3 {
                    accept(&generate_a_cert(q, s, t).unwrap());
                    for l in 1..=3 {
                        accept(&generate_l_cert(q, s, t, l).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(generate_a_cert(0, 1, 1), Err(Error::UnsupportedRegime(_))));
        assert!(matches!(generate_l_cert(1, 0, 1, 1), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn incremented_skein_det_rejected_there() {
        let mut c = generate_l_cert(1, 1, 1, 2).unwrap();
        let (path, _) = c
            .root
            .walk()
            .into_iter()
            .find(|(_, n)| matches!(n.kind, NodeKind::Skein { .. }))
            .map(|(p, n)| (p, n.det.clone()))
            .unwrap();
        c.root.at_path_mut(&path).unwrap().det += 1;
        match verify(&c) {
            Verdict::Reject { path: p, .. } => assert_eq!(p, path),
            v => panic!("{v}"),
        }
    }

    #[test]
    fn qa_claim_with_lspace_base_rejected() {
        let mut c = generate_a_cert(1, 1, 1).unwrap();
        c.claim = Claim::QuasiAlternating;
        assert!(!verify(&c).is_accept());
        c.axioms.clear();
        assert!(!verify(&c).is_accept());
    }

    #[test]
    fn round_trip_is_stable() {
        let c = generate_l_cert(1, 1, 1, 1).unwrap();
        let s = serialize(&c);
        let back = deserialize(s.as_bytes()).unwrap();
        assert_eq!(back, c);
        assert_eq!(serialize(&back), s);
    }

    #[test]
    fn truncated_input_is_a_parse_error() {
        let s = serialize(&generate_a_cert(1, 1, 1).unwrap());
        let cut = &s.as_bytes()[..s.len() / 2];
        assert!(matches!(deserialize(cut), Err(Error::Parse { .. })));
    }

    #[test]
    fn minimal_unknot() {
        let text = r#"{"claim":"QUASI_ALTERNATING","root":{"link":{"family":"NAMED","params":[],"resolution":"*,*,*","name":"unknot"},"det":"1","kind":"BASE","axiom":"unknot"},"axioms":[{"name":"unknot","claim":"QUASI_ALTERNATING","citation":"Definition 2.3(1)"}]}"#;
        let c = deserialize(text.as_bytes()).unwrap();
        accept(&c);
    }

    #[test]
    fn every_single_mutation_rejected() {
        for c in [generate_l_cert(1, 1, 1, 2).unwrap(), generate_a_cert(2, 2, 2).unwrap()] {
            let muts = single_field_mutations(&c);
            assert!(muts.len() > 100);
            for (label, m) in muts {
                assert!(!verify(&m).is_accept(), "mutation {label} accepted");
            }
        }
    }

    #[test]
    fn forward_ref_rejected() {
        let c = generate_a_cert(2, 2, 2).unwrap();
        let has_ref = c.root.walk().iter().any(|(_, n)| n.kind == NodeKind::Ref);
        assert!(has_ref);
        // A lone REF has nothing to point back to.
        let lone = Certificate {
            claim: c.claim,
            root: CertNode { link: c.root.link.clone(), det: c.root.det.clone(), kind: NodeKind::Ref },
            axioms: Vec::new(),
        };
        assert!(!verify(&lone).is_accept());
    }
}
