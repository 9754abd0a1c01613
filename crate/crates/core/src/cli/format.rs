//! Line-oriented text formats.
//!
//! All three formats share the same lexical rules: one directive per line,
//! fields separated by whitespace, `#` starts a comment, blank lines are
//! ignored, scalars are written `p/q` or as integers.
//!
//! Group file:
//!
//! ```text
//! signature 2 1          # Gram diag(I_p, -I_q); or give `gram` plus n rows
//! generator g1 nilpart   # or `linear` for the full matrix I + A
//! 0 0 0                  # n matrix rows
//! 0 0 0
//! 0 0 0
//! translation 1 0 0
//! ```
//!
//! Lie algebra file (`[e_i, e_j] = Σ c e_k`, 1-based, `i < j`):
//!
//! ```text
//! dimension 3
//! bracket 1 2 3 1
//! lattice base           # or `full`, or `explicit` followed by `element` lines
//! ```
//!
//! Constructor parameter files start with `kind sig2`, `kind dim6-heisenberg`,
//! `kind dim6-rank6` or `kind lie`; see [`ConstructorFile`].

use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactlin::scalar::format_vector;
use crate::exactlin::{parse_scalar, Matrix, Scalar, Vector};
use crate::isogrp::{AffineIsometry, GroupPresentation};
use crate::lowdim::{Dim6Kind, Dim6Params, Sig2Generator};
use crate::nilrep::{base_lattice, full_lattice, NilLieAlgebra};
use crate::quadspace::QuadraticSpace;

fn parse_error(line: usize, field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        field: field.to_string(),
        message: message.into(),
    }
}

/// A non-empty line with its 1-based number and whitespace-split fields.
#[derive(Debug, Clone)]
struct Line<'a> {
    number: usize,
    fields: Vec<&'a str>,
}

impl<'a> Line<'a> {
    fn keyword(&self) -> &'a str {
        self.fields[0]
    }

    fn args(&self) -> &[&'a str] {
        &self.fields[1..]
    }

    fn expect_args(&self, field: &str, count: usize) -> Result<&[&'a str]> {
        if self.args().len() != count {
            return Err(parse_error(
                self.number,
                field,
                format!("expected {count} value(s), found {}", self.args().len()),
            ));
        }
        Ok(self.args())
    }

    fn scalars(&self, field: &str, values: &[&str]) -> Result<Vector> {
        values
            .iter()
            .map(|t| parse_scalar(t).map_err(|e| parse_error(self.number, field, strip_kind(&e))))
            .collect()
    }

    fn usize_arg(&self, field: &str, text: &str) -> Result<usize> {
        text.parse()
            .map_err(|_| parse_error(self.number, field, format!("expected a non-negative integer, found `{text}`")))
    }
}

fn strip_kind(e: &Error) -> String {
    match e {
        Error::Input(m)
        | Error::Precondition(m)
        | Error::Structure(m)
        | Error::Scope(m)
        | Error::Constructor(m) => m.clone(),
        Error::Parse { message, .. } => message.clone(),
    }
}

fn lex(text: &str) -> Vec<Line<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = raw.split('#').next().unwrap_or("");
            let fields: Vec<&str> = content.split_whitespace().collect();
            (!fields.is_empty()).then_some(Line { number: i + 1, fields })
        })
        .collect()
}

/// Reads `rows` lines of exactly `cols` scalars each.
fn read_rows<'a>(
    lines: &mut impl Iterator<Item = Line<'a>>,
    rows: usize,
    cols: usize,
    field: &str,
    after: usize,
) -> Result<(Vec<Vector>, usize)> {
    let mut out = Vec::with_capacity(rows);
    let mut last = after;
    for r in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| parse_error(last + 1, field, format!("expected row {} of {rows}, found end of file", r + 1)))?;
        if line.fields.len() != cols {
            return Err(parse_error(
                line.number,
                field,
                format!("row {} has {} entries, expected {cols}", r + 1, line.fields.len()),
            ));
        }
        out.push(line.scalars(field, &line.fields)?);
        last = line.number;
    }
    Ok((out, last))
}

/// How a generator's matrix is to be read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    /// The full linear part `I + A`.
    Linear,
    /// The nilpotent part `A`.
    Nilpart,
}

impl MatrixKind {
    fn keyword(self) -> &'static str {
        match self {
            MatrixKind::Linear => "linear",
            MatrixKind::Nilpart => "nilpart",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorEntry {
    pub name: String,
    pub kind: MatrixKind,
    pub matrix: Matrix,
    pub translation: Vector,
    /// Line of the `generator` directive.
    pub line: usize,
}

impl GeneratorEntry {
    fn nilpart(&self) -> Matrix {
        match self.kind {
            MatrixKind::Nilpart => self.matrix.clone(),
            MatrixKind::Linear => &self.matrix - &Matrix::identity(self.matrix.rows()),
        }
    }
}

/// Parsed group file. Only the shape is checked here; admissibility is a
/// property of the resulting presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupFile {
    /// Declared signature, if any.
    pub signature: Option<(usize, usize)>,
    pub gram: Matrix,
    pub generators: Vec<GeneratorEntry>,
}

impl GroupFile {
    pub fn parse(text: &str) -> Result<GroupFile> {
        let mut signature: Option<(usize, usize, usize)> = None;
        let mut gram: Option<(Matrix, usize)> = None;
        let mut generators: Vec<GeneratorEntry> = Vec::new();
        let mut lines = lex(text).into_iter().peekable();
        while let Some(line) = lines.next() {
            match line.keyword() {
                "signature" => {
                    if signature.is_some() {
                        return Err(parse_error(line.number, "signature", "signature declared twice"));
                    }
                    if !generators.is_empty() {
                        return Err(parse_error(line.number, "signature", "signature must precede the generators"));
                    }
                    let args = line.expect_args("signature", 2)?;
                    let p = line.usize_arg("signature", args[0])?;
                    let q = line.usize_arg("signature", args[1])?;
                    if p + q == 0 {
                        return Err(parse_error(line.number, "signature", "dimension must be positive"));
                    }
                    signature = Some((p, q, line.number));
                }
                "gram" => {
                    if gram.is_some() {
                        return Err(parse_error(line.number, "gram", "gram declared twice"));
                    }
                    if !generators.is_empty() {
                        return Err(parse_error(line.number, "gram", "gram must precede the generators"));
                    }
                    line.expect_args("gram", 0)?;
                    let first = lines
                        .peek()
                        .ok_or_else(|| parse_error(line.number, "gram", "missing gram rows"))?;
                    let n = first.fields.len();
                    let (rows, _) = read_rows(&mut lines, n, n, "gram", line.number)?;
                    let m = Matrix::from_rows(&rows).expect("rows have equal length");
                    if !m.is_symmetric() {
                        return Err(parse_error(line.number, "gram", "gram matrix is not symmetric"));
                    }
                    gram = Some((m, line.number));
                }
                "generator" => {
                    let n = match (&gram, &signature) {
                        (Some((g, _)), _) => g.rows(),
                        (None, Some((p, q, _))) => p + q,
                        (None, None) => {
                            return Err(parse_error(
                                line.number,
                                "generator",
                                "declare `signature` or `gram` before the first generator",
                            ))
                        }
                    };
                    let args = line.args();
                    if args.is_empty() || args.len() > 2 {
                        return Err(parse_error(line.number, "generator", "expected `generator NAME [linear|nilpart]`"));
                    }
                    let name = args[0].to_string();
                    if generators.iter().any(|g| g.name == name) {
                        return Err(parse_error(line.number, "generator", format!("generator name `{name}` is used twice")));
                    }
                    let kind = match args.get(1).copied().unwrap_or("nilpart") {
                        "linear" => MatrixKind::Linear,
                        "nilpart" => MatrixKind::Nilpart,
                        other => {
                            return Err(parse_error(
                                line.number,
                                "generator",
                                format!("matrix kind must be `linear` or `nilpart`, found `{other}`"),
                            ))
                        }
                    };
                    let field = format!("generator {name} matrix");
                    let (rows, last) = read_rows(&mut lines, n, n, &field, line.number)?;
                    let matrix = Matrix::from_rows(&rows).expect("rows have equal length");
                    let tfield = format!("generator {name} translation");
                    let t = lines
                        .next()
                        .ok_or_else(|| parse_error(last + 1, &tfield, "expected `translation`, found end of file"))?;
                    if t.keyword() != "translation" {
                        return Err(parse_error(t.number, &tfield, format!("expected `translation`, found `{}`", t.keyword())));
                    }
                    let args = t.expect_args(&tfield, n)?;
                    let translation = t.scalars(&tfield, args)?;
                    generators.push(GeneratorEntry {
                        name,
                        kind,
                        matrix,
                        translation,
                        line: line.number,
                    });
                }
                other => {
                    return Err(parse_error(line.number, "directive", format!("unknown directive `{other}`")));
                }
            }
        }
        let gram = match (gram, signature) {
            (Some((g, gline)), Some((p, q, sline))) => {
                if g.rows() != p + q {
                    return Err(parse_error(sline, "signature", format!("signature ({p}, {q}) does not match a {0}x{0} gram", g.rows())));
                }
                let space = QuadraticSpace::new(g.clone()).map_err(|e| parse_error(gline, "gram", strip_kind(&e)))?;
                if space.signature() != (p, q) {
                    let (gp, gq) = space.signature();
                    return Err(parse_error(sline, "signature", format!("gram has signature ({gp}, {gq}), not ({p}, {q})")));
                }
                g
            }
            (Some((g, gline)), None) => {
                QuadraticSpace::new(g.clone()).map_err(|e| parse_error(gline, "gram", strip_kind(&e)))?;
                g
            }
            (None, Some((p, q, sline))) => QuadraticSpace::from_signature(p, q)
                .map_err(|e| parse_error(sline, "signature", strip_kind(&e)))?
                .gram()
                .clone(),
            (None, None) => return Err(parse_error(1, "signature", "missing `signature` or `gram`")),
        };
        Ok(GroupFile {
            signature: signature.map(|(p, q, _)| (p, q)),
            gram,
            generators,
        })
    }

    /// Canonical text form. Parsing it returns an equal value.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        if let Some((p, q)) = self.signature {
            writeln!(out, "signature {p} {q}").unwrap();
        }
        let default_gram = self
            .signature
            .map(|(p, q)| QuadraticSpace::from_signature(p, q).map(|s| s.gram() == &self.gram).unwrap_or(false))
            .unwrap_or(false);
        if !default_gram {
            writeln!(out, "gram").unwrap();
            write_rows(&mut out, &self.gram);
        }
        for g in &self.generators {
            writeln!(out, "\ngenerator {} {}", g.name, g.kind.keyword()).unwrap();
            write_rows(&mut out, &g.matrix);
            writeln!(out, "translation {}", format_vector(&g.translation)).unwrap();
        }
        out
    }

    pub fn space(&self) -> Result<QuadraticSpace> {
        QuadraticSpace::new(self.gram.clone())
    }

    pub fn to_presentation(&self) -> Result<GroupPresentation> {
        let space = Arc::new(self.space()?);
        let generators = self
            .generators
            .iter()
            .map(|g| {
                AffineIsometry::new(space.clone(), g.nilpart(), g.translation.clone())
                    .map_err(|e| parse_error(g.line, &format!("generator {}", g.name), strip_kind(&e)))
            })
            .collect::<Result<Vec<_>>>()?;
        let names = self.generators.iter().map(|g| g.name.clone()).collect();
        GroupPresentation::with_names(space, generators, names)
    }

    /// Group file of a presentation with an explicit Gram block and
    /// nilpotent parts.
    pub fn from_presentation(p: &GroupPresentation) -> GroupFile {
        GroupFile {
            signature: None,
            gram: p.space().gram().clone(),
            generators: p
                .generators()
                .iter()
                .zip(p.names())
                .map(|(g, name)| GeneratorEntry {
                    name: name.clone(),
                    kind: MatrixKind::Nilpart,
                    matrix: g.nilpart().clone(),
                    translation: g.translation().clone(),
                    line: 0,
                })
                .collect(),
        }
    }
}

fn write_rows(out: &mut String, m: &Matrix) {
    for i in 0..m.rows() {
        writeln!(out, "{}", format_vector(m.row(i))).unwrap();
    }
}

/// Lattice generators of a Lie algebra file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeSpec {
    /// `(e_i, 0)`: a lattice of `G` inside `T*G`.
    Base,
    /// `(e_i, 0)` and `(0, e_i*)`.
    Full,
    /// Elements of `T*G` in exponential coordinates, length `2 dim`.
    Explicit(Vec<Vector>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieFile {
    pub algebra: NilLieAlgebra,
    pub lattice: LatticeSpec,
}

impl LieFile {
    pub fn parse(text: &str) -> Result<LieFile> {
        parse_lie_lines(&mut lex(text).into_iter().peekable())
    }

    pub fn lattice_generators(&self) -> Vec<Vector> {
        match &self.lattice {
            LatticeSpec::Base => base_lattice(&self.algebra),
            LatticeSpec::Full => full_lattice(&self.algebra),
            LatticeSpec::Explicit(v) => v.clone(),
        }
    }

    pub fn serialize(&self) -> String {
        let mut out = format!("dimension {}\n", self.algebra.dim());
        for (i, j, k, c) in self.algebra.entries() {
            writeln!(out, "bracket {} {} {} {}", i + 1, j + 1, k + 1, crate::exactlin::format_scalar(&c)).unwrap();
        }
        match &self.lattice {
            LatticeSpec::Base => out.push_str("lattice base\n"),
            LatticeSpec::Full => out.push_str("lattice full\n"),
            LatticeSpec::Explicit(v) => {
                out.push_str("lattice explicit\n");
                for x in v {
                    writeln!(out, "element {}", format_vector(x)).unwrap();
                }
            }
        }
        out
    }
}

fn parse_lie_lines<'a>(lines: &mut std::iter::Peekable<impl Iterator<Item = Line<'a>>>) -> Result<LieFile> {
    let mut dim: Option<(usize, usize)> = None;
    let mut entries = Vec::new();
    let mut lattice: Option<LatticeSpec> = None;
    let mut lattice_line = 0;
    for line in lines.by_ref() {
        match line.keyword() {
            "dimension" => {
                if dim.is_some() {
                    return Err(parse_error(line.number, "dimension", "dimension declared twice"));
                }
                let args = line.expect_args("dimension", 1)?;
                let d = line.usize_arg("dimension", args[0])?;
                if d == 0 {
                    return Err(parse_error(line.number, "dimension", "dimension must be positive"));
                }
                dim = Some((d, line.number));
            }
            "bracket" => {
                let (d, _) = dim.ok_or_else(|| parse_error(line.number, "bracket", "`dimension` must come first"))?;
                let args = line.expect_args("bracket", 4)?;
                let mut idx = [0usize; 3];
                for (slot, text) in idx.iter_mut().zip(&args[..3]) {
                    let v = line.usize_arg("bracket", text)?;
                    if v == 0 || v > d {
                        return Err(parse_error(line.number, "bracket", format!("index {v} outside 1..={d}")));
                    }
                    *slot = v - 1;
                }
                if idx[0] >= idx[1] {
                    return Err(parse_error(line.number, "bracket", "indices must satisfy i < j"));
                }
                let c = line.scalars("bracket", &args[3..])?.remove(0);
                entries.push((idx[0], idx[1], idx[2], c));
            }
            "lattice" => {
                if lattice.is_some() {
                    return Err(parse_error(line.number, "lattice", "lattice declared twice"));
                }
                let args = line.expect_args("lattice", 1)?;
                lattice = Some(match args[0] {
                    "base" => LatticeSpec::Base,
                    "full" => LatticeSpec::Full,
                    "explicit" => LatticeSpec::Explicit(Vec::new()),
                    other => {
                        return Err(parse_error(
                            line.number,
                            "lattice",
                            format!("expected `base`, `full` or `explicit`, found `{other}`"),
                        ))
                    }
                });
                lattice_line = line.number;
            }
            "element" => {
                let (d, _) = dim.ok_or_else(|| parse_error(line.number, "element", "`dimension` must come first"))?;
                let Some(LatticeSpec::Explicit(v)) = lattice.as_mut() else {
                    return Err(parse_error(line.number, "element", "`element` lines need `lattice explicit`"));
                };
                let args = line.expect_args("element", 2 * d)?;
                v.push(line.scalars("element", args)?);
            }
            other => return Err(parse_error(line.number, "directive", format!("unknown directive `{other}`"))),
        }
    }
    let (d, dline) = dim.ok_or_else(|| parse_error(1, "dimension", "missing `dimension`"))?;
    let algebra = NilLieAlgebra::new(d, &entries).map_err(|e| parse_error(dline, "bracket", strip_kind(&e)))?;
    let lattice = lattice.unwrap_or(LatticeSpec::Base);
    if matches!(&lattice, LatticeSpec::Explicit(v) if v.is_empty()) {
        return Err(parse_error(lattice_line, "lattice", "explicit lattice without `element` lines"));
    }
    Ok(LieFile { algebra, lattice })
}

/// Input of the `construct` command.
///
/// ```text
/// kind sig2
/// n 5
/// generator 1 | 0 0 | 1        # c | u (2 entries) | w (n - 4 entries)
/// ```
///
/// ```text
/// kind dim6-heisenberg         # or dim6-rank6
/// alpha 1
/// ustar 1 0 0                  # one line per generator
/// ustar 0 1 0
/// u 0 0 0                      # optional, one per generator
/// theta 0 0 1                  # optional extra translations in U
/// ```
///
/// `kind lie` is followed by a Lie algebra file; a file that starts with
/// `dimension` is read as one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructorFile {
    Sig2 { n: usize, generators: Vec<Sig2Generator> },
    Dim6(Dim6Params),
    Lie(LieFile),
}

impl ConstructorFile {
    pub fn parse(text: &str) -> Result<ConstructorFile> {
        let mut lines = lex(text).into_iter().peekable();
        let first = lines.peek().ok_or_else(|| parse_error(1, "kind", "empty constructor file"))?;
        if first.keyword() != "kind" {
            return Ok(ConstructorFile::Lie(parse_lie_lines(&mut lines)?));
        }
        let first = lines.next().unwrap();
        let kind = first.expect_args("kind", 1)?[0];
        match kind {
            "lie" => Ok(ConstructorFile::Lie(parse_lie_lines(&mut lines)?)),
            "sig2" => parse_sig2(lines),
            "dim6-heisenberg" => parse_dim6(lines, Dim6Kind::Heisenberg),
            "dim6-rank6" => parse_dim6(lines, Dim6Kind::Rank6),
            other => Err(parse_error(
                first.number,
                "kind",
                format!("expected `sig2`, `dim6-heisenberg`, `dim6-rank6` or `lie`, found `{other}`"),
            )),
        }
    }

    pub fn serialize(&self) -> String {
        match self {
            ConstructorFile::Sig2 { n, generators } => {
                let mut out = format!("kind sig2\nn {n}\n");
                for g in generators {
                    writeln!(
                        out,
                        "generator {} | {} | {}",
                        crate::exactlin::format_scalar(&g.c),
                        format_vector(&g.u),
                        format_vector(&g.w)
                    )
                    .unwrap();
                }
                out
            }
            ConstructorFile::Dim6(p) => {
                let kind = match p.kind {
                    Dim6Kind::Heisenberg => "dim6-heisenberg",
                    Dim6Kind::Rank6 => "dim6-rank6",
                };
                let mut out = format!("kind {kind}\nalpha {}\n", crate::exactlin::format_scalar(&p.alpha));
                for (key, list) in [("ustar", &p.ustar), ("u", &p.u), ("theta", &p.theta)] {
                    for x in list {
                        writeln!(out, "{key} {}", format_vector(x)).unwrap();
                    }
                }
                out
            }
            ConstructorFile::Lie(l) => format!("kind lie\n{}", l.serialize()),
        }
    }

    pub fn build(&self) -> Result<GroupPresentation> {
        match self {
            ConstructorFile::Sig2 { n, generators } => crate::lowdim::construct_sig2(*n, generators),
            ConstructorFile::Dim6(p) => crate::lowdim::construct_dim6(p),
            ConstructorFile::Lie(l) => crate::nilrep::realize_group(&l.algebra, &l.lattice_generators()),
        }
    }
}

fn parse_sig2<'a>(lines: impl Iterator<Item = Line<'a>>) -> Result<ConstructorFile> {
    let mut n: Option<usize> = None;
    let mut generators = Vec::new();
    for line in lines {
        match line.keyword() {
            "n" => {
                let args = line.expect_args("n", 1)?;
                n = Some(line.usize_arg("n", args[0])?);
            }
            "generator" => {
                let nn = n.ok_or_else(|| parse_error(line.number, "generator", "`n` must come first"))?;
                let joined = line.args().join(" ");
                let parts: Vec<&str> = joined.split('|').collect();
                if parts.len() != 3 {
                    return Err(parse_error(line.number, "generator", "expected `generator c | u1 u2 | w...`"));
                }
                let c: Vec<&str> = parts[0].split_whitespace().collect();
                let u: Vec<&str> = parts[1].split_whitespace().collect();
                let w: Vec<&str> = parts[2].split_whitespace().collect();
                if c.len() != 1 {
                    return Err(parse_error(line.number, "generator c", "expected a single scalar"));
                }
                if u.len() != 2 {
                    return Err(parse_error(line.number, "generator u", format!("expected 2 entries, found {}", u.len())));
                }
                if w.len() + 4 != nn {
                    return Err(parse_error(
                        line.number,
                        "generator w",
                        format!("expected {} entries, found {}", nn.saturating_sub(4), w.len()),
                    ));
                }
                generators.push(Sig2Generator {
                    c: line.scalars("generator c", &c)?.remove(0),
                    u: line.scalars("generator u", &u)?,
                    w: line.scalars("generator w", &w)?,
                });
            }
            other => return Err(parse_error(line.number, "directive", format!("unknown directive `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| parse_error(1, "n", "missing `n`"))?;
    Ok(ConstructorFile::Sig2 { n, generators })
}

fn parse_dim6<'a>(lines: impl Iterator<Item = Line<'a>>, kind: Dim6Kind) -> Result<ConstructorFile> {
    let mut alpha: Option<Scalar> = None;
    let (mut ustar, mut u, mut theta) = (Vec::new(), Vec::new(), Vec::new());
    for line in lines {
        let key = line.keyword();
        match key {
            "alpha" => {
                let args = line.expect_args("alpha", 1)?;
                alpha = Some(line.scalars("alpha", args)?.remove(0));
            }
            "ustar" | "u" | "theta" => {
                let args = line.expect_args(key, 3)?;
                let v = line.scalars(key, args)?;
                match key {
                    "ustar" => ustar.push(v),
                    "u" => u.push(v),
                    _ => theta.push(v),
                }
            }
            other => return Err(parse_error(line.number, "directive", format!("unknown directive `{other}`"))),
        }
    }
    let alpha = alpha.ok_or_else(|| parse_error(1, "alpha", "missing `alpha`"))?;
    Ok(ConstructorFile::Dim6(Dim6Params { kind, alpha, ustar, u, theta }))
}
