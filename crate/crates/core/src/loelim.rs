//! Sign elimination for left orders on cyclic presentations.
//!
//! In a left-ordered group a product of elements that are all `> 1` is
//! `> 1`, so a relator whose syllables all lie on one strict side of the
//! identity rules out the sign pattern that put them there. [`eliminate`]
//! runs this test over every pattern of generator signs, trying each
//! relator in a few equivalent forms: power blocks peeled up to twice and
//! the result cyclically reduced.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::presentations::{peeled_relators, rewritten_relators, xyz_substitution, Presentation};
use crate::words::{
    cyclic_reduce, peel_at, reduce, substitute, word_sign, AffineExp, Item, ParamEnv, ParamWord, Side, Sign,
    SignLattice,
};

/// Signs of the generators, in generator order; the first is `Pos`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignAssignment {
    pub signs: Vec<Sign>,
}

impl SignAssignment {
    pub fn parse(s: &str) -> Option<Self> {
        let signs = s.chars().map(Sign::from_symbol).collect::<Option<Vec<_>>>()?;
        Some(SignAssignment { signs })
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn flip(&self) -> Self {
        SignAssignment { signs: self.signs.iter().map(|s| s.flip()).collect() }
    }

    /// `x_i -> x_{i+k}`: the sign of `x_{i+k}` becomes the sign of `x_i`.
    pub fn shift(&self, k: usize) -> Self {
        let n = self.signs.len();
        SignAssignment { signs: (0..n).map(|i| self.signs[(i + k) % n]).collect() }
    }

    /// Flip everything if the first sign is negative.
    pub fn normalized(&self) -> Self {
        match self.signs.first() {
            Some(Sign::Neg) => self.flip(),
            _ => self.clone(),
        }
    }

    /// Binary value with `+` as 1 and the first generator least significant.
    pub fn rank(&self) -> u64 {
        self.signs.iter().enumerate().map(|(i, s)| if *s == Sign::Pos { 1 << i } else { 0 }).sum()
    }

    fn map(&self, gens: &[String]) -> BTreeMap<String, Sign> {
        gens.iter().cloned().zip(self.signs.iter().copied()).collect()
    }
}

impl fmt::Display for SignAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

/// The printed order of the sixteen five-generator patterns.
pub const TABLE1_ORDER: [&str; 16] = [
    "+++++", "+-+++", "+--++", "+---+", "+----", "++-++", "++--+", "++---", "+++-+", "+++--", "++++-", "+-++-",
    "+-+--", "+--+-", "+-+-+", "++-+-",
];

/// All `2^(n-1)` patterns with the first sign positive; for `n = 5` in the
/// printed order, otherwise counting with `-` as the binary digit 1.
pub fn patterns(n: usize) -> Vec<SignAssignment> {
    if n == 5 {
        return TABLE1_ORDER.iter().map(|s| SignAssignment::parse(s).expect("fixed")).collect();
    }
    if n == 0 {
        return Vec::new();
    }
    (0..1u64 << (n - 1))
        .map(|m| {
            let mut signs = vec![Sign::Pos];
            signs.extend((0..n - 1).rev().map(|i| if m >> i & 1 == 1 { Sign::Neg } else { Sign::Pos }));
            SignAssignment { signs }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternVerdict {
    Eliminated { relator: String, witness: SignLattice, form: ParamWord },
    Survives,
}

impl PatternVerdict {
    pub fn is_eliminated(&self) -> bool {
        matches!(self, PatternVerdict::Eliminated { .. })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternRow {
    /// One-based position in [`patterns`].
    pub index: usize,
    pub pattern: SignAssignment,
    pub verdict: PatternVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationReport {
    pub generators: Vec<String>,
    pub rows: Vec<PatternRow>,
}

impl EliminationReport {
    pub fn eliminated(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| r.verdict.is_eliminated()).map(|r| r.index).collect()
    }

    pub fn survivors(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| !r.verdict.is_eliminated()).map(|r| r.index).collect()
    }

    pub fn row(&self, pattern: &SignAssignment) -> Option<&PatternRow> {
        self.rows.iter().find(|r| &r.pattern == pattern)
    }

    /// `pattern,signs,verdict,witness,sign` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("pattern,signs,verdict,witness,sign\n");
        for r in &self.rows {
            let (v, w, s) = match &r.verdict {
                PatternVerdict::Eliminated { relator, witness, .. } => ("ELIMINATED", relator.as_str(), witness.label()),
                PatternVerdict::Survives => ("SURVIVES", "", ""),
            };
            out.push_str(&format!("{},{},{v},{w},{s}\n", r.index, r.pattern));
        }
        out
    }

    /// One line per pattern: index, one column per generator, the relator
    /// that rules it out or `survives`.
    pub fn to_table(&self) -> String {
        let mut out = format!("{:>4}", "");
        for g in &self.generators {
            out.push_str(&format!(" {g:>3}"));
        }
        out.push_str("   relator\n");
        for r in &self.rows {
            out.push_str(&format!("{:>4}", format!("({})", r.index)));
            for (g, s) in self.generators.iter().zip(&r.pattern.signs) {
                let cell = if *s == Sign::Pos { ">1" } else { "<1" };
                let _ = g;
                out.push_str(&format!(" {cell:>3}"));
            }
            match &r.verdict {
                PatternVerdict::Eliminated { relator, .. } => out.push_str(&format!("   {relator}\n")),
                PatternVerdict::Survives => out.push_str("   survives\n"),
            }
        }
        out
    }
}

/// The word itself, then power blocks peeled on either side up to `depth`
/// times in total, without repeats.
pub fn peel_variants(w: &ParamWord, env: &ParamEnv, depth: usize) -> Vec<ParamWord> {
    let mut seen = BTreeSet::new();
    let mut out = vec![reduce(w, env)];
    seen.insert(out[0].to_string());
    let mut frontier = out.clone();
    for _ in 0..depth {
        let mut next = Vec::new();
        for v in &frontier {
            for (i, item) in v.items().iter().enumerate() {
                if !matches!(item, Item::Block { .. }) {
                    continue;
                }
                for side in [Side::Left, Side::Right] {
                    if let Ok(p) = peel_at(v, i, side, env) {
                        if seen.insert(p.to_string()) {
                            next.push(p);
                        }
                    }
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// A strict sign for the relator under `signs`, with the form that shows it.
pub fn strict_form(
    w: &ParamWord,
    signs: &BTreeMap<String, Sign>,
    env: &ParamEnv,
) -> Option<(SignLattice, ParamWord)> {
    for base in [w.clone(), w.inverse()] {
        for v in peel_variants(&base, env, 2) {
            let c = cyclic_reduce(&v, env);
            let s = word_sign(&c, signs, env);
            if s.is_strict() {
                return Some((s, c));
            }
        }
    }
    None
}

/// Test every relator against every pattern; the first relator in
/// presentation order that has a strict sign is the witness.
pub fn eliminate(p: &Presentation, env: &ParamEnv) -> EliminationReport {
    let rows = patterns(p.generators.len())
        .into_iter()
        .enumerate()
        .map(|(i, pattern)| {
            let signs = pattern.map(&p.generators);
            let verdict = p
                .relators
                .iter()
                .find_map(|(name, w)| {
                    strict_form(w, &signs, env).map(|(witness, form)| PatternVerdict::Eliminated {
                        relator: name.clone(),
                        witness,
                        form,
                    })
                })
                .unwrap_or(PatternVerdict::Survives);
            PatternRow { index: i + 1, pattern, verdict }
        })
        .collect();
    EliminationReport { generators: p.generators.clone(), rows }
}

/// Which symmetries generate the group acting on patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SymmetryAction {
    /// `x_i -> x_{i+1}`.
    pub shift: bool,
    /// Replace the order by its opposite, flipping every sign.
    pub reversal: bool,
}

impl Default for SymmetryAction {
    fn default() -> Self {
        SymmetryAction { shift: true, reversal: true }
    }
}

impl SymmetryAction {
    /// The orbit of a pattern, normalized to a positive first sign.
    pub fn orbit(&self, p: &SignAssignment) -> BTreeSet<SignAssignment> {
        let n = p.len().max(1);
        let shifts = if self.shift { n } else { 1 };
        let mut out = BTreeSet::new();
        for k in 0..shifts {
            let img = p.shift(k);
            if self.reversal {
                out.insert(img.normalized());
            } else if img.signs.first() != Some(&Sign::Neg) {
                out.insert(img);
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub canonical: SignAssignment,
    /// Indices of the survivors in the orbit.
    pub members: Vec<usize>,
    /// Whether the orbit also contains an eliminated pattern.
    pub mixed: bool,
}

/// Group survivors into orbits; the representative has the least
/// [`SignAssignment::rank`].
pub fn orbit_reduce(report: &EliminationReport, sym: SymmetryAction) -> Vec<Orbit> {
    let mut orbits: Vec<Orbit> = Vec::new();
    let mut placed = BTreeSet::new();
    for row in report.rows.iter().filter(|r| !r.verdict.is_eliminated()) {
        if placed.contains(&row.index) {
            continue;
        }
        let orbit = sym.orbit(&row.pattern);
        let canonical = orbit.iter().min_by_key(|p| p.rank()).expect("nonempty orbit").clone();
        let mut members = Vec::new();
        let mut mixed = false;
        for r in &report.rows {
            if orbit.contains(&r.pattern) {
                if r.verdict.is_eliminated() {
                    mixed = true;
                } else {
                    members.push(r.index);
                    placed.insert(r.index);
                }
            }
        }
        orbits.push(Orbit { canonical, members, mixed });
    }
    orbits
}

// ---------------------------------------------------------------------------
// Genus two, three generators

/// Case number for `(q, s, t, l)` signs, or the case it mirrors.
pub fn genus2_case(signs: [i64; 4]) -> (u8, bool) {
    const CASES: [([i64; 4], u8); 8] = [
        ([1, 1, 1, 1], 1),
        ([1, 1, -1, 1], 2),
        ([-1, 1, -1, 1], 3),
        ([-1, -1, -1, 1], 4),
        ([-1, 1, 1, 1], 5),
        ([-1, 1, -1, -1], 6),
        ([1, -1, -1, 1], 7),
        ([1, 1, -1, -1], 8),
    ];
    let norm = signs.map(|v| v.signum());
    if let Some((_, c)) = CASES.iter().find(|(s, _)| *s == norm) {
        return (*c, false);
    }
    let m = norm.map(|v| -v);
    let (_, c) = CASES.iter().find(|(s, _)| *s == m).expect("every pattern or its mirror is listed");
    (*c, true)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelatorCheck {
    pub relator: String,
    pub sign: SignLattice,
    pub form: Option<ParamWord>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level0Pattern {
    pub pattern: SignAssignment,
    /// `X`, `Y`, `Z` with their best sign and the form that shows it.
    pub capitals: Vec<(String, SignLattice, ParamWord)>,
    pub relators: Vec<RelatorCheck>,
}

impl Level0Pattern {
    pub fn closed(&self) -> bool {
        self.relators.iter().any(|r| r.sign.is_strict())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Level0Report {
    pub signs: [i64; 4],
    pub case: u8,
    pub mirrored: bool,
    pub elimination: EliminationReport,
    pub canonical: Vec<SignAssignment>,
    pub patterns: Vec<Level0Pattern>,
}

impl Level0Report {
    /// Surviving patterns that no rewritten relator closes.
    pub fn residual(&self) -> Vec<&Level0Pattern> {
        self.patterns.iter().filter(|p| !p.closed()).collect()
    }

    pub fn to_text(&self) -> String {
        let sym = |v: i64| if v > 0 { '+' } else { '-' };
        let mut out = format!(
            "signs q{} s{} t{} l{}: case {}{}\n",
            sym(self.signs[0]),
            sym(self.signs[1]),
            sym(self.signs[2]),
            sym(self.signs[3]),
            self.case,
            if self.mirrored { " (mirror)" } else { "" }
        );
        for r in &self.elimination.rows {
            if let PatternVerdict::Eliminated { relator, witness, .. } = &r.verdict {
                out.push_str(&format!("  {}: eliminated by {relator} ({witness})\n", r.pattern));
            }
        }
        for p in &self.patterns {
            let caps: Vec<String> = p.capitals.iter().map(|(n, s, _)| format!("{n} {s}")).collect();
            out.push_str(&format!("  {}: {}\n", p.pattern, caps.join(", ")));
            for r in &p.relators {
                out.push_str(&format!("    {} {}\n", r.relator, r.sign));
            }
            let status =
                if p.closed() { "closed at level 0" } else { "open: requires dynamical argument (out of scope)" };
            out.push_str(&format!("    {status}\n"));
        }
        out
    }
}

fn sign_substitution(signs: [i64; 4]) -> BTreeMap<String, AffineExp> {
    ["q", "s", "t", "l"]
        .iter()
        .zip(signs)
        .map(|(n, v)| (n.to_string(), if v < 0 { AffineExp::param(n).neg() } else { AffineExp::param(n) }))
        .collect()
}

/// Best sign of an element over its peel variants (no conjugation).
fn element_sign(w: &ParamWord, signs: &BTreeMap<String, Sign>, env: &ParamEnv) -> (SignLattice, ParamWord) {
    let variants = peel_variants(w, env, 2);
    variants
        .iter()
        .map(|v| (word_sign(v, signs, env), v.clone()))
        .find(|(s, _)| s.is_strict())
        .unwrap_or_else(|| (word_sign(&variants[0], signs, env), variants[0].clone()))
}

/// Level-0 analysis on three generators for the given signs of
/// `(q, s, t, l)`. Negative parameters are written as `-p` with `p >= 1`.
pub fn genus2_level0(q_sign: i64, s_sign: i64, t_sign: i64, l_sign: i64) -> crate::Result<Level0Report> {
    let signs = [q_sign, s_sign, t_sign, l_sign];
    if signs.contains(&0) {
        return Err(crate::error::invalid("signs must be nonzero"));
    }
    let (case, mirrored) = genus2_case(signs);
    let env = ParamEnv::new().with("q", 1).with("s", 1).with("t", 1).with("l", 1);
    let sub = sign_substitution(signs);
    let gens: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    let product = Presentation {
        generators: gens.clone(),
        relators: vec![("zyx".to_string(), ParamWord::parse("z y x").expect("fixed"))],
        env: env.clone(),
    };
    let elimination = eliminate(&product, &env);
    let canonical = orbit_reduce(&elimination, SymmetryAction::default()).into_iter().map(|o| o.canonical).collect();

    let xyz = xyz_substitution();
    let mut relators = rewritten_relators();
    relators.extend(peeled_relators());
    let relators: Vec<(String, ParamWord)> =
        relators.into_iter().map(|(n, w)| (n, reduce(&w.substitute_params(&sub), &env))).collect();

    let mut out = Vec::new();
    for row in elimination.rows.iter().filter(|r| !r.verdict.is_eliminated()) {
        let mut smap = row.pattern.map(&gens);
        let mut capitals = Vec::new();
        for cap in ["X", "Y", "Z"] {
            let word = reduce(&xyz[cap].substitute_params(&sub), &env);
            let word = substitute(&word, &xyz, &env)?;
            let (s, form) = element_sign(&word, &smap, &env);
            capitals.push((cap.to_string(), s, form));
        }
        for (cap, s, _) in &capitals {
            match s {
                SignLattice::StrictPos => {
                    smap.insert(cap.clone(), Sign::Pos);
                }
                SignLattice::StrictNeg => {
                    smap.insert(cap.clone(), Sign::Neg);
                }
                _ => {}
            }
        }
        let checks = relators
            .iter()
            .map(|(name, w)| match strict_form(w, &smap, &env) {
                Some((sign, form)) => RelatorCheck { relator: name.clone(), sign, form: Some(form) },
                None => RelatorCheck {
                    relator: name.clone(),
                    sign: word_sign(&cyclic_reduce(w, &env), &smap, &env),
                    form: None,
                },
            })
            .collect();
        out.push(Level0Pattern { pattern: row.pattern.clone(), capitals, relators: checks });
    }
    Ok(Level0Report { signs, case, mirrored, elimination, canonical, patterns: out })
}
