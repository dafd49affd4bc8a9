//! Bundle specification files.
//!
//! ```text
//! # three canonical line bundles over RP^2 x RP^2 x RP^2
//! name = rp2-cubed
//!
//! [base]
//! gen a degree 1 power 3
//! gen x degree 1 power 2 rhs a*x + a^2
//! dim = 6
//! closed_manifold = true
//!
//! [bundle]
//! rank = 3
//! sw = 1 + a + b + c + a*b + a*c + b*c + a*b*c
//!
//! [options]
//! checks = power_vanishing, power_expansion
//!
//! [expect]
//! lower = 9
//! ```
//!
//! `gen NAME degree D power E [rhs EXPR]` declares the rewrite
//! `NAME^E -> EXPR` (default `0`); `EXPR` runs to the end of the line and may
//! mention earlier generators and `NAME` itself. `[expect]` holds report keys
//! with their expected values; `corpus` compares them.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::bundle::{BundleSpec, ModelError};
use crate::char_classes::ClassError;
use crate::expr::{Expr, ExprError};
use crate::ring::{GeneratorSpec, PresentedRing, RingBuilder, RingError};

/// Diagnostic with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct SpecError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl SpecError {
    fn at(line: usize, column: usize, message: impl Into<String>) -> Self {
        SpecError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    PowerVanishing,
    PowerExpansion,
    Kernel,
    DualInversion,
    RelativeHeightOracle,
    SwapSymmetry,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::PowerVanishing,
        Check::PowerExpansion,
        Check::Kernel,
        Check::DualInversion,
        Check::RelativeHeightOracle,
        Check::SwapSymmetry,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Check::PowerVanishing => "power_vanishing",
            Check::PowerExpansion => "power_expansion",
            Check::Kernel => "kernel",
            Check::DualInversion => "dual_inversion",
            Check::RelativeHeightOracle => "relative_height_oracle",
            Check::SwapSymmetry => "swap_symmetry",
        }
    }

    /// Smallest rank the check makes sense for.
    pub fn min_rank(self) -> u32 {
        match self {
            Check::PowerVanishing => 3,
            Check::PowerExpansion | Check::Kernel | Check::SwapSymmetry => 2,
            Check::RelativeHeightOracle => 2,
            Check::DualInversion => 1,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Check::ALL
            .into_iter()
            .find(|c| c.tag() == s)
            .ok_or_else(|| format!("unknown check `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecFile {
    pub name: Option<String>,
    pub bundle: BundleSpec,
    pub checks: Vec<Check>,
    /// `(report key, expected value)` in file order.
    pub expect: Vec<(String, String)>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Section {
    Top,
    Base,
    Bundle,
    Options,
    Expect,
}

struct GenLine {
    line: usize,
    name: String,
    name_column: usize,
    degree: u32,
    power: u16,
    rhs: Option<(Expr, usize)>,
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(text: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (byte, c)) in text.char_indices().enumerate() {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some((col, byte)),
            (true, Some((scol, sbyte))) => {
                out.push((scol + 1, &text[sbyte..byte]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((scol, sbyte)) = start {
        out.push((scol + 1, &text[sbyte..]));
    }
    out
}

fn char_column(line: &str, byte: usize) -> usize {
    line[..byte].chars().count() + 1
}

fn parse_uint<T: FromStr>(line: usize, column: usize, tok: &str) -> Result<T, SpecError> {
    tok.parse().map_err(|_| {
        SpecError::at(
            line,
            column,
            format!("expected a non-negative integer, found `{tok}`"),
        )
    })
}

fn parse_bool(line: usize, column: usize, tok: &str) -> Result<bool, SpecError> {
    match tok {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(SpecError::at(
            line,
            column,
            format!("expected `true` or `false`, found `{tok}`"),
        )),
    }
}

fn parse_expr(line: usize, column: usize, text: &str) -> Result<Expr, SpecError> {
    Expr::parse(text)
        .map_err(|ExprError { column: c, message }| SpecError::at(line, column + c - 1, message))
}

/// Locates the first identifier of `expr` not accepted by `known`.
fn undeclared(expr: &Expr, known: impl Fn(&str) -> bool) -> Option<(String, usize)> {
    expr.identifiers()
        .find(|(name, _)| !known(name))
        .map(|(name, col)| (name.to_string(), col))
}

pub fn parse_spec(text: &str) -> Result<SpecFile, SpecError> {
    let mut section = Section::Top;
    let mut seen_sections: Vec<Section> = Vec::new();
    let mut name = None;
    let mut gens: Vec<GenLine> = Vec::new();
    let mut dim: Option<(usize, u32)> = None;
    let mut closed: Option<bool> = None;
    let mut rank: Option<(usize, usize, u32)> = None;
    let mut sw: Option<(usize, usize, Expr)> = None;
    let mut checks: Vec<(usize, usize, Check)> = Vec::new();
    let mut expect: Vec<(String, String)> = Vec::new();
    let mut bundle_line = None;
    let mut last_line = 0;

    for (idx, raw_line) in text.lines().enumerate() {
        let ln = idx + 1;
        last_line = ln;
        let line = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        };
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let indent = char_column(line, line.len() - line.trim_start().len());
        if trimmed.starts_with('[') {
            let next = match trimmed {
                "[base]" => Section::Base,
                "[bundle]" => Section::Bundle,
                "[options]" => Section::Options,
                "[expect]" => Section::Expect,
                other => {
                    return Err(SpecError::at(
                        ln,
                        indent,
                        format!("unknown section `{other}`"),
                    ))
                }
            };
            if seen_sections.contains(&next) {
                return Err(SpecError::at(
                    ln,
                    indent,
                    format!("section `{trimmed}` repeated"),
                ));
            }
            seen_sections.push(next);
            if next == Section::Bundle {
                bundle_line = Some(ln);
            }
            section = next;
            continue;
        }

        if section == Section::Base && trimmed.starts_with("gen") && !trimmed.contains('=') {
            gens.push(parse_gen_line(ln, line)?);
            continue;
        }

        let Some(eq) = line.find('=') else {
            return Err(SpecError::at(ln, indent, "expected `key = value`"));
        };
        let key = line[..eq].trim();
        let value_start = eq + 1 + (line[eq + 1..].len() - line[eq + 1..].trim_start().len());
        let value = line[eq + 1..].trim();
        let vcol = char_column(line, value_start);
        let dup = |seen: bool| {
            if seen {
                Err(SpecError::at(ln, indent, format!("`{key}` given twice")))
            } else {
                Ok(())
            }
        };
        match (section, key) {
            (Section::Top, "name") => {
                dup(name.is_some())?;
                name = Some(value.to_string());
            }
            (Section::Base, "dim") => {
                dup(dim.is_some())?;
                dim = Some((ln, parse_uint(ln, vcol, value)?));
            }
            (Section::Base, "closed_manifold") => {
                dup(closed.is_some())?;
                closed = Some(parse_bool(ln, vcol, value)?);
            }
            (Section::Bundle, "rank") => {
                dup(rank.is_some())?;
                rank = Some((ln, vcol, parse_uint(ln, vcol, value)?));
            }
            (Section::Bundle, "sw") => {
                dup(sw.is_some())?;
                sw = Some((ln, vcol, parse_expr(ln, vcol, value)?));
            }
            (Section::Options, "checks") => {
                dup(!checks.is_empty())?;
                let mut offset = value_start;
                for piece in line[value_start..].split(',') {
                    let lead = piece.len() - piece.trim_start().len();
                    let col = char_column(line, offset + lead);
                    let tag = piece.trim();
                    let check = tag.parse().map_err(|m| SpecError::at(ln, col, m))?;
                    checks.push((ln, col, check));
                    offset += piece.len() + 1;
                }
            }
            (Section::Expect, k) if !k.is_empty() => {
                dup(expect.iter().any(|(e, _)| e == k))?;
                expect.push((k.to_string(), value.to_string()));
            }
            _ => {
                return Err(SpecError::at(
                    ln,
                    indent,
                    format!("unexpected key `{key}` in this section"),
                ))
            }
        }
    }

    let end = last_line.max(1);
    let (_, n) = dim.ok_or_else(|| SpecError::at(end, 1, "missing base dimension `dim`"))?;
    let base = build_base(gens, n)?;

    let bundle_at = bundle_line.unwrap_or(end);
    let (sw_line, sw_col, sw_expr) =
        sw.ok_or_else(|| SpecError::at(bundle_at, 1, "missing total SW class"))?;
    let (rank_line, rank_col, rank) =
        rank.ok_or_else(|| SpecError::at(bundle_at, 1, "missing bundle rank"))?;
    if let Some((name, col)) = undeclared(&sw_expr, |n| base.generator_index(n).is_some()) {
        return Err(SpecError::at(
            sw_line,
            sw_col + col - 1,
            format!("undeclared generator `{name}`"),
        ));
    }
    let total = base
        .eval(&sw_expr)
        .map_err(|e| SpecError::at(sw_line, sw_col, e.to_string()))?;
    let bundle =
        BundleSpec::new(base, rank, &total, closed.unwrap_or(false)).map_err(|e| match e {
            ModelError::Class(ClassError::ExceedsRank { degree, rank }) => SpecError::at(
                sw_line,
                sw_col,
                format!("class exceeds rank bound: degree {degree} part in a rank-{rank} bundle"),
            ),
            ModelError::Class(ClassError::MissingUnit) => {
                SpecError::at(sw_line, sw_col, "total SW class must have constant term 1")
            }
            other => SpecError::at(rank_line, rank_col, other.to_string()),
        })?;

    for &(ln, col, check) in &checks {
        if bundle.rank() < check.min_rank() {
            return Err(SpecError::at(
                ln,
                col,
                format!("check `{check}` needs rank at least {}", check.min_rank()),
            ));
        }
    }

    Ok(SpecFile {
        name,
        bundle,
        checks: checks.into_iter().map(|(_, _, c)| c).collect(),
        expect,
    })
}

fn parse_gen_line(ln: usize, line: &str) -> Result<GenLine, SpecError> {
    let toks = tokens(line);
    let expect_word = |i: usize, word: &str| -> Result<(), SpecError> {
        match toks.get(i) {
            Some((_, t)) if *t == word => Ok(()),
            Some((c, t)) => Err(SpecError::at(
                ln,
                *c,
                format!("expected `{word}`, found `{t}`"),
            )),
            None => Err(SpecError::at(
                ln,
                line.chars().count() + 1,
                format!("expected `{word}`"),
            )),
        }
    };
    expect_word(0, "gen")?;
    let (name_column, name) = *toks
        .get(1)
        .ok_or_else(|| SpecError::at(ln, line.chars().count() + 1, "expected generator name"))?;
    let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
        && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    if !valid {
        return Err(SpecError::at(
            ln,
            name_column,
            format!("invalid generator name `{name}`"),
        ));
    }
    expect_word(2, "degree")?;
    let (dc, dt) = *toks
        .get(3)
        .ok_or_else(|| SpecError::at(ln, line.chars().count() + 1, "expected degree"))?;
    let degree = parse_uint(ln, dc, dt)?;
    expect_word(4, "power")?;
    let (pc, pt) = *toks
        .get(5)
        .ok_or_else(|| SpecError::at(ln, line.chars().count() + 1, "expected power"))?;
    let power = parse_uint(ln, pc, pt)?;
    let rhs = match toks.get(6) {
        None => None,
        Some((c, "rhs")) => {
            let start_byte = line
                .char_indices()
                .nth(c - 1 + 3)
                .map_or(line.len(), |(b, _)| b);
            let text = &line[start_byte..];
            let lead = text.len() - text.trim_start().len();
            let col = char_column(line, start_byte + lead);
            Some((parse_expr(ln, col, text.trim())?, col))
        }
        Some((c, t)) => {
            return Err(SpecError::at(
                ln,
                *c,
                format!("expected `rhs`, found `{t}`"),
            ))
        }
    };
    Ok(GenLine {
        line: ln,
        name: name.to_string(),
        name_column,
        degree,
        power,
        rhs,
    })
}

fn build_base(gens: Vec<GenLine>, n: u32) -> Result<PresentedRing, SpecError> {
    let mut builder = RingBuilder::new();
    for g in gens {
        let (rhs, rhs_col) = match &g.rhs {
            None => (Default::default(), g.name_column),
            Some((expr, col)) => {
                let known = |x: &str| builder.index_of(x).is_some() || x == g.name;
                if let Some((bad, c)) = undeclared(expr, known) {
                    return Err(SpecError::at(
                        g.line,
                        col + c - 1,
                        format!("undeclared generator `{bad}`"),
                    ));
                }
                let raw = builder
                    .eval_raw(expr, Some(&g.name))
                    .map_err(|e| SpecError::at(g.line, *col, e.to_string()))?;
                (raw, *col)
            }
        };
        builder
            .push(GeneratorSpec {
                name: g.name.clone(),
                degree: g.degree,
                rewrite_exponent: g.power,
                rewrite_rhs: rhs,
            })
            .map_err(|e| {
                let col = match e {
                    RingError::RuleDegreeMismatch { .. }
                    | RingError::RuleNotReducing { .. }
                    | RingError::RuleForwardReference { .. } => rhs_col,
                    _ => g.name_column,
                };
                SpecError::at(g.line, col, e.to_string())
            })?;
    }
    Ok(builder.finish(n))
}

/// Canonical text for a spec; parses back to an equal [`SpecFile`].
pub fn render_spec(file: &SpecFile) -> String {
    let mut out = String::new();
    if let Some(name) = &file.name {
        out.push_str(&format!("name = {name}\n\n"));
    }
    let base = file.bundle.base();
    out.push_str("[base]\n");
    for g in base.generators() {
        out.push_str(&format!(
            "gen {} degree {} power {}",
            g.name, g.degree, g.rewrite_exponent
        ));
        if !g.rewrite_rhs.is_zero() {
            out.push_str(&format!(" rhs {}", base.render(&g.rewrite_rhs)));
        }
        out.push('\n');
    }
    out.push_str(&format!("dim = {}\n", file.bundle.base_dim()));
    out.push_str(&format!(
        "closed_manifold = {}\n\n",
        file.bundle.closed_manifold()
    ));
    out.push_str("[bundle]\n");
    out.push_str(&format!("rank = {}\n", file.bundle.rank()));
    out.push_str(&format!(
        "sw = {}\n",
        base.render(file.bundle.total_sw().value())
    ));
    if !file.checks.is_empty() {
        let tags: Vec<&str> = file.checks.iter().map(|c| c.tag()).collect();
        out.push_str(&format!("\n[options]\nchecks = {}\n", tags.join(", ")));
    }
    if !file.expect.is_empty() {
        out.push_str("\n[expect]\n");
        for (k, v) in &file.expect {
            out.push_str(&format!("{k} = {v}\n"));
        }
    }
    out
}
