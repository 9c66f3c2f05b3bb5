//! Plain-text formats for every value the CLI reads or writes.
//!
//! A matrix is a header line, `sym <n>` or `mat <rows> <cols>`, followed by
//! its rows as whitespace-separated rationals (`p/q` or `p`). Composite
//! values (chains, maps, classifier verdicts) are a header line followed by
//! matrix blocks. Blank lines and lines starting with `#` are ignored, so
//! blocks may be separated freely.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geometry::{Chain, Crossing, InvertibleChain, LineProfile};
use crate::linalg::{Mat, RankOneTerm, SymMat, Vector};
use crate::maps::{
    ClassifyResult, DegenerateMapSpec, Functional, MapOracle, MapSpec, StandardMapSpec, Witness,
};
use crate::minkowski::{AffineCongruence, LorentzMat, WeylMap};
use crate::quadform::{CongruenceDiag, Decomposition, Inertia};
use crate::rat::{self, Rat, Sign};

/// Whitespace style for written values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Style {
    #[default]
    Compact,
    /// Columns right-aligned within each matrix block.
    Pretty,
}

/// Values with a text representation that re-parses to an equal value.
pub trait TextFormat: Sized {
    fn write_text(&self, out: &mut String, style: Style);
    fn read_text(reader: &mut Reader<'_>) -> Result<Self>;
}

pub fn to_text<T: TextFormat>(value: &T, style: Style) -> String {
    let mut out = String::new();
    value.write_text(&mut out, style);
    out
}

/// Parses exactly one value; trailing content is an error.
pub fn from_text<T: TextFormat>(input: &str) -> Result<T> {
    let mut reader = Reader::new(input);
    let value = T::read_text(&mut reader)?;
    reader.expect_end()?;
    Ok(value)
}

/// Line cursor over a text input.
pub struct Reader<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Reader<'a> {
    pub fn new(input: &'a str) -> Self {
        let lines = input
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
            .collect();
        Reader { lines, pos: 0 }
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.lines.len()
    }

    pub fn expect_end(&self) -> Result<()> {
        match self.lines.get(self.pos) {
            None => Ok(()),
            Some(&(line, text)) => {
                Err(Error::Parse { line, msg: format!("unexpected trailing content `{text}`") })
            }
        }
    }

    fn line_number(&self) -> usize {
        self.lines.get(self.pos).or(self.lines.last()).map_or(0, |l| l.0)
    }

    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { line: self.line_number(), msg: msg.into() }
    }

    /// The next line split into tokens, without consuming it.
    fn peek_tokens(&self) -> Option<Vec<&'a str>> {
        self.lines.get(self.pos).map(|(_, l)| l.split_whitespace().collect())
    }

    fn next_tokens(&mut self) -> Result<(usize, Vec<&'a str>)> {
        let &(line, text) =
            self.lines.get(self.pos).ok_or_else(|| self.error("unexpected end of input"))?;
        self.pos += 1;
        Ok((line, text.split_whitespace().collect()))
    }

    /// Consumes a header line whose first token is `keyword`.
    fn header(&mut self, keyword: &str) -> Result<(usize, Vec<&'a str>)> {
        let (line, tokens) = self.next_tokens()?;
        if tokens.first() != Some(&keyword) {
            return Err(Error::Parse {
                line,
                msg: format!("expected `{keyword}` header, found `{}`", tokens.join(" ")),
            });
        }
        Ok((line, tokens[1..].to_vec()))
    }

    fn rat_row(&mut self, len: usize) -> Result<Vec<Rat>> {
        let (line, tokens) = self.next_tokens()?;
        if tokens.len() != len {
            return Err(Error::Parse {
                line,
                msg: format!("expected {len} entries, found {}", tokens.len()),
            });
        }
        tokens.iter().map(|t| rat::parse(t, line)).collect()
    }

    fn rows(&mut self, rows: usize, cols: usize) -> Result<Mat> {
        let data = (0..rows).map(|_| self.rat_row(cols)).collect::<Result<Vec<_>>>()?;
        Mat::new(rows, cols, data.into_iter().flatten().collect())
    }

    fn sym_rows(&mut self, n: usize) -> Result<SymMat> {
        let line = self.line_number();
        let m = self.rows(n, n)?;
        SymMat::new(m).map_err(|e| match e {
            Error::NotSymmetric { row, col } => Error::Parse {
                line,
                msg: format!("matrix declared `sym` is not symmetric at ({}, {})", row + 1, col + 1),
            },
            other => other,
        })
    }
}

fn parse_usize(token: Option<&&str>, line: usize, what: &str) -> Result<usize> {
    token
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| Error::Parse { line, msg: format!("expected {what}") })
}

fn parse_dim(token: Option<&&str>, line: usize) -> Result<usize> {
    let n = parse_usize(token, line, "a dimension")?;
    if n == 0 {
        return Err(Error::Parse { line, msg: "dimensions must be positive".into() });
    }
    Ok(n)
}

/// Value of `key=value` among header tokens.
fn keyed<'t>(tokens: &[&'t str], key: &str, line: usize) -> Result<&'t str> {
    tokens
        .iter()
        .find_map(|t| t.strip_prefix(key).and_then(|rest| rest.strip_prefix('=')))
        .ok_or_else(|| Error::Parse { line, msg: format!("missing `{key}=` in header") })
}

fn keyed_dim(tokens: &[&str], key: &str, line: usize) -> Result<usize> {
    parse_dim(Some(&keyed(tokens, key, line)?), line)
}

fn keyed_sign(tokens: &[&str], line: usize) -> Result<Sign> {
    keyed(tokens, "c", line)?.parse().map_err(|msg| Error::Parse { line, msg })
}

fn write_rows<'a>(out: &mut String, rows: impl Iterator<Item = &'a [Rat]>, style: Style) {
    let cells: Vec<Vec<String>> =
        rows.map(|r| r.iter().map(ToString::to_string).collect()).collect();
    let width = match style {
        Style::Compact => 0,
        Style::Pretty => cells.iter().flatten().map(String::len).max().unwrap_or(0),
    };
    for row in cells {
        let line: Vec<String> = row.into_iter().map(|c| format!("{c:>width$}")).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
}

impl TextFormat for Mat {
    fn write_text(&self, out: &mut String, style: Style) {
        let _ = writeln!(out, "mat {} {}", self.rows(), self.cols());
        write_rows(out, self.row_vectors(), style);
    }

    /// Accepts `mat`, `sym` and `lorentz` headers.
    fn read_text(r: &mut Reader<'_>) -> Result<Self> {
        match r.peek_tokens().as_deref().and_then(|t| t.first().copied()) {
            Some("sym") => Ok(SymMat::read_text(r)?.into_mat()),
            Some("lorentz") => {
                r.header("lorentz")?;
                r.rows(3, 3)
            }
            _ => {
                let (line, t) = r.header("mat")?;
                let rows = parse_dim(t.first(), line)?;
                let cols = parse_dim(t.get(1), line)?;
                r.rows(rows, cols)
            }
        }
    }
}

impl TextFormat for SymMat {
    fn write_text(&self, out: &mut String, style: Style) {
        let _ = writeln!(out, "sym {}", self.dim());
        write_rows(out, self.as_mat().row_vectors(), style);
    }

    fn read_text(r: &mut Reader<'_>) -> Result<Self> {
        let (line, t) = r.header("sym")?;
        let n = parse_dim(t.first(), line)?;
        r.sym_rows(n)
    }
}

impl TextFormat for Vector {
    fn write_text(&self, out: &mut String, style: Style) {
        let _ = writeln!(out, "vec {}", self.dim());
        write_rows(out, std::iter::once(self.entries()), style);
    }

    fn read_text(r: &mut Reader<'_>) -> Result<Self> {
        let (line, t) = r.header("vec")?;
        let n = parse_dim(t.first(), line)?;
        Ok(Vector::new(r.rat_row(n)?))
    }
}

impl TextFormat for Chain {
    fn write_text(&self, out: &mut String, style: Style) {
        let _ = writeln!(out, "chain {}", self.len());
        for (i, p) in self.points().iter().enumerate() {
            if i > 0 {
                out.push('\n');
            }
            p.write_text(out, style);
        }
    }

    fn read_text(r: &mut Reader<'_>) -> Result<Self> {
        let (line, t) = r.header("chain")?;
        let count = parse_dim(t.first(), line)?;
        let points = (0..count).map(|_| SymMat::read_text(r)).collect::<Result<Vec<_>>>()?;
        Chain::new(points)
    }
}

impl TextFormat for InvertibleChain {
    fn write_text(&self, out: &mut String, style: Style) {
        self.chain.write_text(out, style);
        let _ = writeln!(out, "\ncrossings {}", self.crossings.len());
        for c in &self.crossings {
            let _ = writeln!(out, "at {}", c.index);
            c.point.write_text(out, style);
        }
    }

    fn read_text(r: &mut Reader<'_>) -> Result<Self> {
        let chain = Chain::read_text(r)?;
        let (line, t) = r.header("crossings")?;
        let count = parse_usize(t.first(), line, "a crossing count")?;
        let crossings = (0..count)
            .map(|_| {
                let (line, t) = r.header("at")?;
                let index = parse_usize(t.first(), line, "a segment index")?;
                Ok(Crossing { index, point: SymMat::read_text(r)? })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(InvertibleChain { chain, crossings })
    }
}

impl TextFormat for LorentzMat {
    fn write_text(&self, out: &mut String, style: Style) {
        out.push_str("lorentz\n");
        write_rows(out, self.as_mat().row_vectors(), style);
    }

    /// Accepts a `lorentz` block or a `mat 3 3` block.
    fn read_text(r: &mut Reader<'_>) -> Result<Self> {
        LorentzMat::new(Mat::read_text(r)?)
    }
}

impl TextFormat for WeylMap {
    fn write_text(&self, out: &mut String, style: Style) {
        let _ = writeln!(out, "weyl {}", self.alpha());
        write_rows(out, self.lorentz().as_mat().row_vectors(), style);
        write_rows(out, std::iter::once(self.translation().entries()), style);
    }

    fn read_text(r: &mut Reader<'_>) -> Result<Self> {
        let (line, t) = r.header("weyl")?;
        let alpha = rat::parse(t.first().ok_or_else(|| r.error("missing α"))?, line)?;
        let l = LorentzMat::new(r.rows(3, 3)?)?;
        let b = Vector::new(r.rat_row(3)?);
        WeylMap::new(alpha, l, b)
    }
}

impl TextFormat for AffineCongruence {
    fn write_text(&self, out: &mut String, style: Style) {
        let _ = writeln!(out, "affine c={}", self.c);
        write_rows(out, self.p().row_vectors(), style);
        if !self.s.is_zero() {
            out.push_str("translation\n");
            self.s.write_text(out, style);
        }
    }

    fn read_text(r: &mut Reader<'_>) -> Result<Self> {
        let (line, t) = r.header("affine")?;
        let c = keyed_sign(&t, line)?;
        let p = r.rows(2, 2)?;
        let s = read_translation(r)?.unwrap_or_else(|| SymMat::zeros(2));
        AffineCongruence::new(c, p, s)
    }
}

fn read_translation(r: &mut Reader<'_>) -> Result<Option<SymMat>> {
    if r.peek_tokens().as_deref().and_then(|t| t.first().copied()) == Some("translation") {
        r.header("translation")?;
        Ok(Some(SymMat::read_text(r)?))
    } else {
        Ok(None)
    }
}

impl TextFormat for CongruenceDiag {
    fn write_text(&self, out: &mut String, style: Style) {
        let _ = writeln!(out, "diag {}", self.d.len());
        write_rows(out, self.s.row_vectors(), style);
        write_rows(out, std::iter::once(self.d.as_slice()), style);
    }

    fn read_text(r: &mut Reader<'_>) -> Result<Self> {
        let (line, t) = r.header("diag")?;
        let n = parse_dim(t.first(), line)?;
        let s = r.rows(n, n)?;
        let d = r.rat_row(n)?;
        Ok(CongruenceDiag { s, d })
    }
}

impl TextFormat for Inertia {
    fn write_text(&self, out: &mut String, _style: Style) {
        let _ = writeln!(out, "inertia {} {} {}", self.pos, self.neg, self.zero);
    }

    fn read_text(r: &mut Reader<'_>) -> Result<Self> {
        let (line, t) = r.header("inertia")?;
        Ok(Inertia {
            pos: parse_usize(t.first(), line, "a count")?,
            neg: parse_usize(t.get(1), line, "a count")?,
            zero: parse_usize(t.get(2), line, "a count")?,
        })
    }
}

impl TextFormat for Decomposition {
    fn write_text(&self, out: &mut String, _style: Style) {
        let n = self.terms.first().map_or(0, RankOneTerm::dim);
        let _ = writeln!(out, "decomposition {n} {}", self.terms.len());
        for t in &self.terms {
            let _ = write!(out, "term {}", t.coeff());
            for x in t.vector().entries() {
                let _ = write!(out, " {x}");
            }
            out.push('\n');
        }
    }

    fn read_text(r: &mut Reader<'_>) -> Result<Self> {
        let (line, t) = r.header("decomposition")?;
        let n = parse_usize(t.first(), line, "a dimension")?;
        let count = parse_usize(t.get(1), line, "a term count")?;
        let terms = (0..count)
            .map(|_| {
                let (line, t) = r.header("term")?;
                if t.len() != n + 1 {
                    return Err(Error::Parse { line, msg: format!("term needs {} entries", n + 1) });
                }
                let values = t.iter().map(|x| rat::parse(x, line)).collect::<Result<Vec<_>>>()?;
                let (coeff, v) = values.split_first().expect("nonempty");
                RankOneTerm::new(coeff.clone(), Vector::new(v.to_vec()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Decomposition { terms })
    }
}

impl TextFormat for LineProfile {
    fn write_text(&self, out: &mut String, style: Style) {
        match self {
            LineProfile::Constant { k } => {
                let _ = writeln!(out, "constant {k}");
            }
            LineProfile::Exceptional { lambda0, point, k_at_point } => {
                let _ = writeln!(out, "exceptional {lambda0} {k_at_point}");
                point.write_text(out, style);
            }
        }
    }

    fn read_text(r: &mut Reader<'_>) -> Result<Self> {
        let (line, t) = r.next_tokens()?;
        match t.first().copied() {
            Some("constant") => Ok(LineProfile::Constant { k: parse_usize(t.get(1), line, "k")? }),
            Some("exceptional") => {
                let lambda0 = rat::parse(t.get(1).ok_or_else(|| r.error("missing λ₀"))?, line)?;
                let k_at_point = parse_usize(t.get(2), line, "k")?;
                Ok(LineProfile::Exceptional { lambda0, point: SymMat::read_text(r)?, k_at_point })
            }
            _ => Err(Error::Parse { line, msg: "expected `constant` or `exceptional`".into() }),
        }
    }
}

fn functional_tag(f: &Functional) -> String {
    match f {
        Functional::Trace => "trace".into(),
        Functional::ScaledTrace(k) => format!("scaled:{k}"),
        Functional::Table(_) => "table".into(),
    }
}

fn write_standard(out: &mut String, s: &StandardMapSpec, style: Style) {
    let _ = writeln!(out, "standard c={} n={} m={}", s.c(), s.n(), s.m());
    write_rows(out, s.r_block().row_vectors(), style);
    if !s.translation().is_zero() {
        out.push_str("translation\n");
        s.translation().write_text(out, style);
    }
}

fn write_degenerate(out: &mut String, d: &DegenerateMapSpec, style: Style) {
    let f = d.functional();
    let _ = writeln!(out, "degenerate n={} m={} f={}", d.n(), d.m(), functional_tag(f));
    write_rows(out, d.b().as_mat().row_vectors(), style);
    if let Functional::Table(rows) = f {
        let _ = writeln!(out, "table {}", rows.len());
        for (x, v) in rows {
            x.write_text(out, style);
            let _ = writeln!(out, "value {v}");
        }
    }
}

fn read_standard(r: &mut Reader<'_>) -> Result<StandardMapSpec> {
    let (line, t) = r.header("standard")?;
    let c = keyed_sign(&t, line)?;
    let n = keyed_dim(&t, "n", line)?;
    let m = keyed_dim(&t, "m", line)?;
    let block = r.rows(m, n)?;
    let translation = read_translation(r)?;
    StandardMapSpec::new(c, block, translation)
}

/// `n=` may be omitted when the functional is a table; it is then taken from
/// the first table input.
fn read_degenerate(r: &mut Reader<'_>) -> Result<DegenerateMapSpec> {
    let (line, t) = r.header("degenerate")?;
    let m = keyed_dim(&t, "m", line)?;
    let n = keyed(&t, "n", line).ok().map(|v| parse_dim(Some(&v), line)).transpose()?;
    let tag = keyed(&t, "f", line)?;
    let b = r.sym_rows(m)?;
    let f = match tag {
        "trace" => Functional::Trace,
        "table" => {
            let (line, t) = r.header("table")?;
            let count = parse_usize(t.first(), line, "a table size")?;
            let rows = (0..count)
                .map(|_| {
                    let x = SymMat::read_text(r)?;
                    let (line, t) = r.header("value")?;
                    let v = rat::parse(t.first().ok_or_else(|| r.error("missing value"))?, line)?;
                    Ok((x, v))
                })
                .collect::<Result<Vec<_>>>()?;
            Functional::Table(rows)
        }
        other => match other.strip_prefix("scaled:") {
            Some(k) => Functional::ScaledTrace(rat::parse(k, line)?),
            None => {
                return Err(Error::Parse { line, msg: format!("unknown functional `{other}`") })
            }
        },
    };
    let n = match (n, &f) {
        (Some(n), _) => n,
        (None, Functional::Table(rows)) if !rows.is_empty() => rows[0].0.dim(),
        _ => return Err(Error::Parse { line, msg: "missing `n=` in header".into() }),
    };
    DegenerateMapSpec::new(n, b, f)
}

impl TextFormat for MapSpec {
    fn write_text(&self, out: &mut String, style: Style) {
        match self {
            MapSpec::Standard(s) => write_standard(out, s, style),
            MapSpec::Degenerate(d) => write_degenerate(out, d, style),
        }
    }

    fn read_text(r: &mut Reader<'_>) -> Result<Self> {
        match r.peek_tokens().as_deref().and_then(|t| t.first().copied()) {
            Some("standard") => Ok(MapSpec::Standard(read_standard(r)?)),
            Some("degenerate") => Ok(MapSpec::Degenerate(read_degenerate(r)?)),
            _ => Err(r.error("expected a `standard` or `degenerate` map")),
        }
    }
}

impl TextFormat for MapOracle {
    fn write_text(&self, out: &mut String, style: Style) {
        if let Some(spec) = self.spec() {
            return spec.write_text(out, style);
        }
        let table = self.table();
        let _ = writeln!(out, "tabulated n={} m={} {}", self.n(), self.m(), table.len());
        for (x, y) in table {
            x.write_text(out, style);
            y.write_text(out, style);
        }
    }

    fn read_text(r: &mut Reader<'_>) -> Result<Self> {
        if r.peek_tokens().as_deref().and_then(|t| t.first().copied()) != Some("tabulated") {
            return Ok(MapOracle::from_spec(MapSpec::read_text(r)?));
        }
        let (line, t) = r.header("tabulated")?;
        let n = keyed_dim(&t, "n", line)?;
        let m = keyed_dim(&t, "m", line)?;
        let count = parse_usize(t.iter().find(|x| !x.contains('=')), line, "a pair count")?;
        let pairs = (0..count)
            .map(|_| {
                let x = SymMat::read_text(r)?;
                let y = SymMat::read_text(r)?;
                Ok((x, y))
            })
            .collect::<Result<Vec<_>>>()?;
        MapOracle::tabulated(n, m, pairs)
    }
}

impl TextFormat for Witness {
    fn write_text(&self, out: &mut String, style: Style) {
        let _ = writeln!(out, "witness d_in={} d_out={}", self.input_distance, self.image_distance);
        for m in [&self.a, &self.b, &self.image_a, &self.image_b] {
            m.write_text(out, style);
        }
    }

    fn read_text(r: &mut Reader<'_>) -> Result<Self> {
        let (line, t) = r.header("witness")?;
        let input_distance = parse_usize(Some(&keyed(&t, "d_in", line)?), line, "d_in")?;
        let image_distance = parse_usize(Some(&keyed(&t, "d_out", line)?), line, "d_out")?;
        Ok(Witness {
            a: SymMat::read_text(r)?,
            b: SymMat::read_text(r)?,
            image_a: SymMat::read_text(r)?,
            image_b: SymMat::read_text(r)?,
            input_distance,
            image_distance,
        })
    }
}

/// Standard and degenerate verdicts are written as map specs (the
/// degenerate one with a table functional holding the sampled values), so a
/// verdict can be fed back in as a map.
impl TextFormat for ClassifyResult {
    fn write_text(&self, out: &mut String, style: Style) {
        match self {
            ClassifyResult::Standard { c, r_block, translation } => {
                let spec = StandardMapSpec::new(*c, r_block.clone(), Some(translation.clone()))
                    .expect("verified verdict");
                write_standard(out, &spec, style);
            }
            ClassifyResult::Degenerate { b, translation, samples } => {
                let n = samples.first().map_or(0, |(x, _)| x.dim());
                let _ = writeln!(out, "degenerate n={n} m={} f=table", b.dim());
                write_rows(out, b.as_mat().row_vectors(), style);
                let _ = writeln!(out, "table {}", samples.len());
                for (x, v) in samples {
                    x.write_text(out, style);
                    let _ = writeln!(out, "value {v}");
                }
                if !translation.is_zero() {
                    out.push_str("translation\n");
                    translation.write_text(out, style);
                }
            }
            ClassifyResult::NotAdjacencyPreserving { witness } => {
                out.push_str("not-adjacency-preserving\n");
                witness.write_text(out, style);
            }
            ClassifyResult::Undetermined { reason } => {
                let _ = writeln!(out, "undetermined {}", reason.replace('\n', " "));
            }
        }
    }

    fn read_text(r: &mut Reader<'_>) -> Result<Self> {
        match r.peek_tokens().as_deref().and_then(|t| t.first().copied()) {
            Some("standard") => {
                let s = read_standard(r)?;
                Ok(ClassifyResult::Standard {
                    c: s.c(),
                    r_block: s.r_block().clone(),
                    translation: s.translation().clone(),
                })
            }
            Some("degenerate") => {
                let d = read_degenerate(r)?;
                let translation = read_translation(r)?.unwrap_or_else(|| SymMat::zeros(d.m()));
                let Functional::Table(samples) = d.functional().clone() else {
                    return Err(r.error("degenerate verdict must carry a sample table"));
                };
                Ok(ClassifyResult::Degenerate { b: d.b().clone(), translation, samples })
            }
            Some("not-adjacency-preserving") => {
                r.next_tokens()?;
                Ok(ClassifyResult::NotAdjacencyPreserving { witness: Witness::read_text(r)? })
            }
            Some("undetermined") => {
                let (_, t) = r.next_tokens()?;
                Ok(ClassifyResult::Undetermined { reason: t[1..].join(" ") })
            }
            _ => Err(r.error("expected a classification verdict")),
        }
    }
}

/// Parses a sequence of matrix blocks (`sym` or `mat`) until the input ends.
pub fn read_all_matrices(input: &str) -> Result<Vec<Mat>> {
    let mut r = Reader::new(input);
    let mut out = Vec::new();
    while !r.at_end() {
        out.push(Mat::read_text(&mut r)?);
    }
    Ok(out)
}
