//! Text formats for functions, sets, polyhedra and sequences.
//!
//! ```text
//! function f
//! piece (-inf, 0): nu
//! piece (0, +inf): 1*x + 0
//! point 0: nu
//! ```
//!
//! Regions a function document does not cover are `nu`. Lines starting with
//! `#` are comments.

use std::fmt::Write as _;

use num::{Signed, Zero};

use crate::arith::{parse_rational, render_rational, Rational, XReal};
use crate::bounds::{ExtSeq, Tail};
use crate::error::{Error, Result, Span};
use crate::extfn::Polyhedron;
use crate::interval::{Bound, Interval, IntervalSet};
use crate::pwa::{Piece, PiecewiseFn};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DocumentKind {
    Function,
    Set,
    Polyhedron,
    Sequence,
}

impl DocumentKind {
    pub fn keyword(self) -> &'static str {
        match self {
            DocumentKind::Function => "function",
            DocumentKind::Set => "set",
            DocumentKind::Polyhedron => "polyhedron",
            DocumentKind::Sequence => "sequence",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Payload {
    Function(PiecewiseFn),
    Set(IntervalSet),
    Polyhedron(Polyhedron),
    Sequence(ExtSeq),
}

impl Payload {
    pub fn kind(&self) -> DocumentKind {
        match self {
            Payload::Function(_) => DocumentKind::Function,
            Payload::Set(_) => DocumentKind::Set,
            Payload::Polyhedron(_) => DocumentKind::Polyhedron,
            Payload::Sequence(_) => DocumentKind::Sequence,
        }
    }
}

/// One parsed file. Equality ignores source positions.
#[derive(Clone, Debug)]
pub struct Document {
    pub name: String,
    pub payload: Payload,
    /// Position of the header and of every body line, in order.
    pub spans: Vec<Span>,
}

impl PartialEq for Document {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.payload == other.payload
    }
}

impl Eq for Document {}

impl Document {
    pub fn new(name: &str, payload: Payload) -> Self {
        Document {
            name: name.to_string(),
            payload,
            spans: Vec::new(),
        }
    }

    pub fn kind(&self) -> DocumentKind {
        self.payload.kind()
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Num(Rational),
    Punct(char),
    Le,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn syntax(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        span: Span { line, column: col },
        message: message.into(),
    }
}

fn semantic(line: usize, col: usize, message: impl Into<String>) -> Error {
    Error::Semantic {
        span: Span { line, column: col },
        message: message.into(),
    }
}

fn lex(line: usize, text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit()
            || (c == '.' && chars.get(i + 1).is_some_and(char::is_ascii_digit))
        {
            let start = i;
            while i < chars.len()
                && (chars[i].is_ascii_digit() || chars[i] == '.' || chars[i] == '/')
            {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            let r = parse_rational(&lit)
                .ok_or_else(|| syntax(line, col, format!("malformed number `{lit}`")))?;
            out.push(Token {
                tok: Tok::Num(r),
                col,
            });
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Word(chars[start..i].iter().collect()),
                col,
            });
        } else if c == '<' && chars.get(i + 1) == Some(&'=') {
            out.push(Token { tok: Tok::Le, col });
            i += 2;
        } else if "()[],:*+-".contains(c) {
            out.push(Token {
                tok: Tok::Punct(c),
                col,
            });
            i += 1;
        } else {
            return Err(syntax(line, col, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

/// Cursor over the tokens of one line.
struct Cursor {
    line: usize,
    toks: Vec<Token>,
    pos: usize,
    end_col: usize,
}

impl Cursor {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn peek_at(&self, k: usize) -> Option<&Tok> {
        self.toks.get(self.pos + k).map(|t| &t.tok)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.col)
    }

    fn err(&self, message: impl Into<String>) -> Error {
        syntax(self.line, self.col(), message)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn eat_word(&mut self, w: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Word(x)) if x == w) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn finish(&self) -> Result<()> {
        if self.pos < self.toks.len() {
            Err(self.err("unexpected trailing input"))
        } else {
            Ok(())
        }
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    /// `nu`, `+inf`, `-inf` or a signed rational.
    fn value(&mut self) -> Result<XReal> {
        if self.eat_word("nu") {
            return Ok(XReal::Nu);
        }
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        match self.next() {
            Some(Tok::Num(r)) => Ok(XReal::Finite(if neg { -r } else { r })),
            Some(Tok::Word(w)) if w == "inf" => {
                Ok(if neg { XReal::MinusInf } else { XReal::PlusInf })
            }
            _ => {
                self.pos -= 1;
                Err(self.err("expected a value (`nu`, `+inf`, `-inf` or a rational)"))
            }
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let col = self.col();
        match self.value()? {
            XReal::Finite(r) => Ok(r),
            v => Err(syntax(
                self.line,
                col,
                format!("expected a rational, found `{v}`"),
            )),
        }
    }

    fn interval(&mut self) -> Result<Interval> {
        let open_col = self.col();
        let lo_open = match self.next() {
            Some(Tok::Punct('(')) => true,
            Some(Tok::Punct('[')) => false,
            _ => return Err(syntax(self.line, open_col, "expected `(` or `[`")),
        };
        let lo_col = self.col();
        let lo = self.value()?;
        self.expect(',')?;
        let hi_col = self.col();
        let hi = self.value()?;
        let close_col = self.col();
        let hi_open = match self.next() {
            Some(Tok::Punct(')')) => true,
            Some(Tok::Punct(']')) => false,
            _ => return Err(syntax(self.line, close_col, "expected `)` or `]`")),
        };
        let bound = |v: XReal, open: bool, col: usize, lower: bool| -> Result<Bound> {
            match v {
                XReal::Finite(r) if open => Ok(Bound::Open(r)),
                XReal::Finite(r) => Ok(Bound::Closed(r)),
                XReal::Nu => Err(semantic(self.line, col, "`nu` is not an interval endpoint")),
                XReal::MinusInf if lower && open => Ok(Bound::Unbounded),
                XReal::PlusInf if !lower && open => Ok(Bound::Unbounded),
                XReal::MinusInf | XReal::PlusInf if !open => {
                    Err(semantic(self.line, col, "infinite endpoints must be open"))
                }
                v => Err(semantic(
                    self.line,
                    col,
                    format!("`{v}` cannot bound this side"),
                )),
            }
        };
        let lo = bound(lo, lo_open, lo_col, true)?;
        let hi = bound(hi, hi_open, hi_col, false)?;
        Interval::new(lo, hi).ok_or_else(|| semantic(self.line, open_col, "empty interval"))
    }

    /// `c*var`, `c var`, `var` or `c`, with signs, summed.
    fn linear(
        &mut self,
        var: impl Fn(&str) -> Option<usize>,
    ) -> Result<(Vec<(usize, Rational)>, Rational)> {
        let mut terms = Vec::new();
        let mut constant = Rational::zero();
        let mut first = true;
        loop {
            let sign = if self.eat('-') {
                -Rational::from_integer(1.into())
            } else if self.eat('+') || first {
                Rational::from_integer(1.into())
            } else {
                break;
            };
            first = false;
            let coef = match self.peek() {
                Some(Tok::Num(r)) => {
                    let r = r.clone();
                    self.pos += 1;
                    Some(r)
                }
                _ => None,
            };
            self.eat('*');
            let col = self.col();
            let index = match self.peek() {
                Some(Tok::Word(w)) => match var(w) {
                    Some(i) => Some(i),
                    None => return Err(syntax(self.line, col, format!("unknown variable `{w}`"))),
                },
                _ => None,
            };
            match (coef, index) {
                (c, Some(i)) => {
                    self.pos += 1;
                    terms.push((
                        i,
                        sign * c.unwrap_or_else(|| Rational::from_integer(1.into())),
                    ));
                }
                (Some(c), None) => constant += sign * c,
                (None, None) => return Err(self.err("expected a term")),
            }
        }
        Ok((terms, constant))
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    cs.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && cs.all(|c| c.is_alphanumeric() || c == '_')
}

struct Line {
    number: usize,
    keyword: String,
    keyword_col: usize,
    cursor: Cursor,
}

fn lines(text: &str) -> Result<Vec<Line>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let body = strip_comment(raw);
        let toks = lex(number, body)?;
        if toks.is_empty() {
            continue;
        }
        let keyword_col = toks[0].col;
        let Tok::Word(keyword) = toks[0].tok.clone() else {
            return Err(syntax(number, keyword_col, "expected a keyword"));
        };
        let end_col = body.chars().count() + 1;
        out.push(Line {
            number,
            keyword,
            keyword_col,
            cursor: Cursor {
                line: number,
                toks,
                pos: 1,
                end_col,
            },
        });
    }
    Ok(out)
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut lines = lines(text)?;
    if lines.is_empty() {
        return Err(syntax(1, 1, "empty document"));
    }
    let mut header = lines.remove(0);
    let kind = match header.keyword.as_str() {
        "function" => DocumentKind::Function,
        "set" => DocumentKind::Set,
        "polyhedron" => DocumentKind::Polyhedron,
        "sequence" => DocumentKind::Sequence,
        other => {
            return Err(syntax(
                header.number,
                header.keyword_col,
                format!("expected `function`, `set`, `polyhedron` or `sequence`, found `{other}`"),
            ))
        }
    };
    let name = match header.cursor.next() {
        Some(Tok::Word(w)) if is_ident(&w) => w,
        _ => {
            return Err(syntax(
                header.number,
                header.cursor.end_col,
                "expected a name after the header keyword",
            ))
        }
    };
    header.cursor.finish()?;
    let mut spans = vec![Span {
        line: header.number,
        column: header.keyword_col,
    }];
    spans.extend(lines.iter().map(|l| Span {
        line: l.number,
        column: l.keyword_col,
    }));
    let payload = match kind {
        DocumentKind::Function => Payload::Function(parse_function_body(lines)?),
        DocumentKind::Set => Payload::Set(parse_set_body(lines)?),
        DocumentKind::Polyhedron => {
            Payload::Polyhedron(parse_polyhedron_body(lines, header.number)?)
        }
        DocumentKind::Sequence => Payload::Sequence(parse_sequence_body(lines, header.number)?),
    };
    Ok(Document {
        name,
        payload,
        spans,
    })
}

fn unknown_keyword(l: &Line, kind: DocumentKind, allowed: &str) -> Error {
    syntax(
        l.number,
        l.keyword_col,
        format!(
            "unexpected `{}` in a {} document (expected {allowed})",
            l.keyword,
            kind.keyword()
        ),
    )
}

fn overlaps(a: &Interval, b: &Interval) -> bool {
    !IntervalSet::from_intervals([a.clone()])
        .intersection(&IntervalSet::from_intervals([b.clone()]))
        .is_empty()
}

fn parse_function_body(lines: Vec<Line>) -> Result<PiecewiseFn> {
    let mut items: Vec<(Interval, Piece)> = Vec::new();
    for mut l in lines {
        let c = &mut l.cursor;
        let (region, piece_col) = match l.keyword.as_str() {
            "piece" => {
                let iv = c.interval()?;
                if iv.is_point() {
                    return Err(semantic(
                        l.number,
                        l.keyword_col,
                        "use `point` for a single point",
                    ));
                }
                c.expect(':')?;
                let col = c.col();
                (iv, col)
            }
            "point" => {
                let x = c.rational()?;
                c.expect(':')?;
                let col = c.col();
                (Interval::point(x), col)
            }
            _ => {
                return Err(unknown_keyword(
                    &l,
                    DocumentKind::Function,
                    "`piece` or `point`",
                ))
            }
        };
        let piece = if matches!(c.peek(), Some(Tok::Word(w)) if w == "nu" || w == "inf")
            || (matches!(c.peek(), Some(Tok::Punct('+' | '-')))
                && matches!(c.peek_at(1), Some(Tok::Word(w)) if w == "inf"))
        {
            Piece::from_value(&c.value()?)
        } else {
            let (terms, constant) = c.linear(|w| (w == "x").then_some(0))?;
            let slope: Rational = terms.into_iter().map(|(_, r)| r).sum();
            if region.is_point() && !slope.is_zero() {
                return Err(semantic(
                    l.number,
                    piece_col,
                    "a point value must be a constant",
                ));
            }
            Piece::affine(slope, constant)
        };
        c.finish()?;
        if let Some((prev, _)) = items.iter().find(|(iv, _)| overlaps(iv, &region)) {
            return Err(semantic(
                l.number,
                l.keyword_col,
                format!("`{region}` overlaps `{prev}`"),
            ));
        }
        items.push((region, piece));
    }
    let mut breaks: Vec<Rational> = Vec::new();
    for (iv, _) in &items {
        breaks.extend(iv.lo().value().cloned());
        breaks.extend(iv.hi().value().cloned());
    }
    PiecewiseFn::from_evaluator(breaks, |x| {
        items
            .iter()
            .find(|(iv, _)| iv.contains(x))
            .map_or(XReal::Nu, |(_, p)| p.eval(x))
    })
}

fn parse_set_body(lines: Vec<Line>) -> Result<IntervalSet> {
    let mut parts = Vec::new();
    for mut l in lines {
        let c = &mut l.cursor;
        let iv = match l.keyword.as_str() {
            "interval" => c.interval()?,
            "point" => Interval::point(c.rational()?),
            _ => {
                return Err(unknown_keyword(
                    &l,
                    DocumentKind::Set,
                    "`interval` or `point`",
                ))
            }
        };
        c.finish()?;
        parts.push(iv);
    }
    Ok(IntervalSet::from_intervals(parts))
}

fn parse_polyhedron_body(lines: Vec<Line>, header_line: usize) -> Result<Polyhedron> {
    let mut dim: Option<(usize, usize)> = None;
    let mut rows: Vec<(usize, usize, Vec<(usize, Rational)>, Rational)> = Vec::new();
    let var = |w: &str| {
        w.strip_prefix('x')
            .and_then(|d| d.parse::<usize>().ok())
            .filter(|&i| (1..=4).contains(&i))
    };
    for mut l in lines {
        let c = &mut l.cursor;
        match l.keyword.as_str() {
            "dimension" => {
                let col = c.col();
                let n = c.rational()?;
                let n = if n.is_integer() {
                    usize::try_from(n.to_integer())
                        .ok()
                        .filter(|n| (1..=4).contains(n))
                } else {
                    None
                };
                match n {
                    Some(n) if dim.is_none() => dim = Some((n, l.number)),
                    Some(_) => {
                        return Err(semantic(l.number, l.keyword_col, "dimension given twice"))
                    }
                    None => {
                        return Err(semantic(
                            l.number,
                            col,
                            "dimension must be an integer in 1..=4",
                        ))
                    }
                }
            }
            "constraint" => {
                let (terms, constant) = c.linear(var)?;
                if !constant.is_zero() {
                    return Err(semantic(
                        l.number,
                        l.keyword_col,
                        "constants belong on the right of `<=`",
                    ));
                }
                if c.next() != Some(Tok::Le) {
                    c.pos -= 1;
                    return Err(c.err("expected `<=`"));
                }
                let b = c.rational()?;
                rows.push((l.number, l.keyword_col, terms, b));
            }
            _ => {
                return Err(unknown_keyword(
                    &l,
                    DocumentKind::Polyhedron,
                    "`dimension` or `constraint`",
                ))
            }
        }
        c.finish()?;
    }
    let used = rows
        .iter()
        .flat_map(|(_, _, t, _)| t.iter().map(|(i, _)| *i))
        .max()
        .unwrap_or(1);
    let n = match dim {
        Some((n, _)) => {
            if let Some((line, col, ..)) = rows
                .iter()
                .find(|(_, _, t, _)| t.iter().any(|(i, _)| *i > n))
            {
                return Err(semantic(
                    *line,
                    *col,
                    format!("variable beyond dimension {n}"),
                ));
            }
            n
        }
        None => used,
    };
    let constraints = rows
        .into_iter()
        .map(|(_, _, terms, b)| {
            let mut a = vec![Rational::zero(); n];
            for (i, r) in terms {
                a[i - 1] += r;
            }
            (a, b)
        })
        .collect();
    Polyhedron::new(n, constraints).map_err(|e| semantic(header_line, 1, e.to_string()))
}

fn value_list(c: &mut Cursor) -> Result<Vec<XReal>> {
    let mut out = Vec::new();
    if c.at_end() {
        return Ok(out);
    }
    loop {
        out.push(c.value()?);
        if !c.eat(',') {
            return Ok(out);
        }
    }
}

fn parse_sequence_body(lines: Vec<Line>, header_line: usize) -> Result<ExtSeq> {
    let mut prefix: Option<Vec<XReal>> = None;
    let mut tail: Option<(Tail, usize)> = None;
    for mut l in lines {
        let c = &mut l.cursor;
        match l.keyword.as_str() {
            "prefix" => {
                c.expect(':')?;
                if prefix.is_some() {
                    return Err(semantic(l.number, l.keyword_col, "prefix given twice"));
                }
                prefix = Some(value_list(c)?);
            }
            "tail" => {
                c.expect(':')?;
                if tail.is_some() {
                    return Err(semantic(l.number, l.keyword_col, "tail given twice"));
                }
                let t = if c.eat_word("constant") {
                    Tail::Constant(c.value()?)
                } else if c.eat_word("periodic") {
                    Tail::Periodic(value_list(c)?)
                } else if c.eat_word("arithmetic") {
                    let a = c.rational()?;
                    let neg = if c.eat('-') {
                        true
                    } else {
                        c.expect('+')?;
                        false
                    };
                    let b = c.rational()?;
                    if !c.eat_word("n") {
                        return Err(c.err("expected `n`"));
                    }
                    Tail::Arithmetic(a, if neg { -b } else { b })
                } else {
                    return Err(c.err("expected `constant`, `periodic` or `arithmetic`"));
                };
                tail = Some((t, l.number));
            }
            _ => {
                return Err(unknown_keyword(
                    &l,
                    DocumentKind::Sequence,
                    "`prefix` or `tail`",
                ))
            }
        }
        c.finish()?;
    }
    let (tail, line) =
        tail.ok_or_else(|| semantic(header_line, 1, "a sequence needs a `tail` line"))?;
    ExtSeq::new(prefix.unwrap_or_default(), tail).map_err(|e| semantic(line, 1, e.to_string()))
}

fn expect_kind(doc: Document, kind: DocumentKind) -> Result<Document> {
    if doc.kind() == kind {
        Ok(doc)
    } else {
        let span = doc
            .spans
            .first()
            .copied()
            .unwrap_or(Span { line: 1, column: 1 });
        Err(Error::Semantic {
            span,
            message: format!(
                "expected a {} document, found a {} document",
                kind.keyword(),
                doc.kind().keyword()
            ),
        })
    }
}

pub fn parse_function(text: &str) -> Result<(String, PiecewiseFn)> {
    let doc = expect_kind(parse_document(text)?, DocumentKind::Function)?;
    match doc.payload {
        Payload::Function(f) => Ok((doc.name, f)),
        _ => unreachable!(),
    }
}

pub fn parse_set(text: &str) -> Result<(String, IntervalSet)> {
    let doc = expect_kind(parse_document(text)?, DocumentKind::Set)?;
    match doc.payload {
        Payload::Set(s) => Ok((doc.name, s)),
        _ => unreachable!(),
    }
}

pub fn parse_polyhedron(text: &str) -> Result<(String, Polyhedron)> {
    let doc = expect_kind(parse_document(text)?, DocumentKind::Polyhedron)?;
    match doc.payload {
        Payload::Polyhedron(p) => Ok((doc.name, p)),
        _ => unreachable!(),
    }
}

pub fn parse_sequence(text: &str) -> Result<(String, ExtSeq)> {
    let doc = expect_kind(parse_document(text)?, DocumentKind::Sequence)?;
    match doc.payload {
        Payload::Sequence(s) => Ok((doc.name, s)),
        _ => unreachable!(),
    }
}

/// Canonical text: every gap and every breakpoint gets its own line.
pub fn render_function(name: &str, f: &PiecewiseFn) -> String {
    let mut out = format!("function {name}\n");
    for (i, piece) in f.pieces().iter().enumerate() {
        let _ = writeln!(out, "piece {}: {}", f.gap(i), piece);
        if let (Some(b), Some(v)) = (f.breakpoints().get(i), f.point_values().get(i)) {
            let _ = writeln!(out, "point {}: {}", render_rational(b), v);
        }
    }
    out
}

pub fn render_set(name: &str, s: &IntervalSet) -> String {
    let mut out = format!("set {name}\n");
    for iv in s.intervals() {
        if iv.is_point() {
            let _ = writeln!(out, "point {}", render_rational(&iv.sample()));
        } else {
            let _ = writeln!(out, "interval {iv}");
        }
    }
    out
}

pub fn render_polyhedron(name: &str, p: &Polyhedron) -> String {
    let mut out = format!("polyhedron {name}\ndimension {}\n", p.dim());
    for (a, b) in p.constraints() {
        let mut lhs = String::new();
        for (i, c) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let sep = match (lhs.is_empty(), c.is_negative()) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            let _ = write!(lhs, "{sep}{}*x{}", render_rational(&c.abs()), i + 1);
        }
        if lhs.is_empty() {
            lhs = "0*x1".into();
        }
        let _ = writeln!(out, "constraint {lhs} <= {}", render_rational(b));
    }
    out
}

fn join(vs: &[XReal]) -> String {
    vs.iter()
        .map(XReal::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn render_sequence(name: &str, s: &ExtSeq) -> String {
    let tail = match s.tail() {
        Tail::Constant(c) => format!("constant {c}"),
        Tail::Periodic(vs) => format!("periodic {}", join(vs)),
        Tail::Arithmetic(a, b) => {
            let sign = if b.is_negative() { '-' } else { '+' };
            format!(
                "arithmetic {} {sign} {} n",
                render_rational(a),
                render_rational(&b.abs())
            )
        }
    };
    let prefix = join(s.prefix());
    let sep = if prefix.is_empty() { "" } else { " " };
    format!("sequence {name}\nprefix:{sep}{prefix}\ntail: {tail}\n")
}

pub fn render_document(d: &Document) -> String {
    match &d.payload {
        Payload::Function(f) => render_function(&d.name, f),
        Payload::Set(s) => render_set(&d.name, s),
        Payload::Polyhedron(p) => render_polyhedron(&d.name, p),
        Payload::Sequence(s) => render_sequence(&d.name, s),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{q, qi};

    fn span_of(e: &Error) -> (usize, usize) {
        let s = e.span().expect("span");
        (s.line, s.column)
    }

    #[test]
    fn function_on_positive_ray() {
        let (name, f) = parse_function("function phi\npiece (0, +inf): 1*x + 0\n").unwrap();
        assert_eq!(name, "phi");
        let want = PiecewiseFn::new(
            vec![qi(0)],
            vec![Piece::Nu, Piece::affine(qi(1), qi(0))],
            vec![XReal::Nu],
        )
        .unwrap();
        assert_eq!(f, want);
    }

    #[test]
    fn function_forms() {
        let text = "# comment\nfunction g  # trailing\n\npiece (-inf, 0): -inf\npoint 0: 0\npiece (0, 1]: 0.5*x - 3\npiece (1, +inf): x\n";
        let (_, f) = parse_function(text).unwrap();
        assert_eq!(f.eval(&qi(-5)), XReal::MinusInf);
        assert_eq!(f.eval(&qi(0)), XReal::zero());
        assert_eq!(f.eval(&qi(1)), XReal::Finite(q(-5, 2)));
        assert_eq!(f.eval(&qi(2)), XReal::int(2));
        let (_, h) = parse_function("function h\npiece (0, 2): 3 - 2 x\n").unwrap();
        assert_eq!(h.eval(&qi(1)), XReal::int(1));
        assert_eq!(h.eval(&qi(3)), XReal::Nu);
    }

    #[test]
    fn improper_linear_renders_three_lines() {
        let f = PiecewiseFn::new(
            vec![qi(0)],
            vec![Piece::MinusInf, Piece::PlusInf],
            vec![XReal::zero()],
        )
        .unwrap();
        let text = render_function("lin", &f);
        assert_eq!(
            text,
            "function lin\npiece (-inf, 0): -inf\npoint 0: 0\npiece (0, +inf): +inf\n"
        );
        assert_eq!(parse_function(&text).unwrap().1, f);
    }

    #[test]
    fn removable_breakpoints_vanish() {
        let (_, f) =
            parse_function("function f\npiece (-inf, 0): x\npoint 0: 0\npiece (0, +inf): x\n")
                .unwrap();
        assert_eq!(
            render_function("f", &f),
            "function f\npiece (-inf, +inf): 1*x + 0\n"
        );
    }

    #[test]
    fn nu_is_rendered() {
        let f = PiecewiseFn::indicator(&IntervalSet::closed(qi(0), qi(1)));
        let text = render_function("iota", &f);
        assert!(text.contains("piece (-inf, 0): nu"));
        assert!(text.contains("piece (1, +inf): nu"));
    }

    #[test]
    fn malformed_functions() {
        let overlap =
            parse_function("function f\npiece (0, 1): x\npiece (0.5, 2): 1\n").unwrap_err();
        assert_eq!(overlap.code(), "semantic");
        assert_eq!(span_of(&overlap), (3, 1));
        let closed = parse_function("function f\npiece [-inf, 0): 1\n").unwrap_err();
        assert_eq!(span_of(&closed), (2, 8));
        let bracket = parse_function("function f\npiece {0, 1): 1\n").unwrap_err();
        assert_eq!(bracket.code(), "syntax");
        let bracket = parse_function("function f\npiece (0, 1>: 1\n").unwrap_err();
        assert_eq!(span_of(&bracket), (2, 12));
        assert!(parse_function("function f\npiece (2, 1): 1\n").is_err());
        assert!(parse_function("function f\npoint 1: 2*x\n").is_err());
        assert!(parse_function("function f\npoint 1: 2\npoint 1: 3\n").is_err());
        assert!(parse_function("").is_err());
        assert!(parse_function("set A\ninterval [0, 1]\n").is_err());
        assert!(parse_function("function f\nslice (0, 1): 1\n").is_err());
        assert!(parse_function("function\n").is_err());
        assert!(parse_function("function f\npiece (0, 1): 1 2\n").is_err());
        assert!(parse_function("function f\npiece (0, 1): y\n").is_err());
    }

    #[test]
    fn sets() {
        let (_, a) = parse_set("set A\ninterval [-1, 2]\n").unwrap();
        assert_eq!(a, IntervalSet::closed(qi(-1), qi(2)));
        let (_, b) = parse_set("set B\ninterval (-inf, 0]\npoint 5\npoint 1/2\n").unwrap();
        assert!(b.contains(&qi(5)) && b.contains(&q(1, 2)) && !b.contains(&qi(1)));
        assert_eq!(parse_set(&render_set("B", &b)).unwrap().1, b);
        assert_eq!(parse_set("set E\n").unwrap().1, IntervalSet::empty());
        assert!(parse_set("set A\ninterval [0, +inf]\n").is_err());
    }

    #[test]
    fn polyhedra() {
        let (_, p) =
            parse_polyhedron("polyhedron A\nconstraint x1 <= 0\nconstraint 1*x2 <= 0\n").unwrap();
        assert_eq!(p.dim(), 2);
        assert_eq!(p.constraints()[1], (vec![qi(0), qi(1)], qi(0)));
        let text = render_polyhedron("A", &p);
        assert_eq!(parse_polyhedron(&text).unwrap().1, p);
        let (_, r) = parse_polyhedron("polyhedron R\ndimension 3\n").unwrap();
        assert_eq!(r.dim(), 3);
        assert!(parse_polyhedron("polyhedron A\ndimension 1\nconstraint x2 <= 0\n").is_err());
        assert!(parse_polyhedron("polyhedron A\nconstraint x1 >= 0\n").is_err());
        assert!(parse_polyhedron("polyhedron A\nconstraint x5 <= 0\n").is_err());
    }

    #[test]
    fn sequences() {
        let (_, s) =
            parse_sequence("sequence s\nprefix: 1, -inf\ntail: arithmetic 1 - 2 n\n").unwrap();
        assert_eq!(s.term(1), XReal::MinusInf);
        assert_eq!(s.term(3), XReal::int(-5));
        assert_eq!(parse_sequence(&render_sequence("s", &s)).unwrap().1, s);
        let (_, p) = parse_sequence("sequence p\nprefix:\ntail: periodic 0, 1\n").unwrap();
        assert_eq!(
            render_sequence("p", &p),
            "sequence p\nprefix:\ntail: periodic 0, 1\n"
        );
        assert!(parse_sequence("sequence s\nprefix: nu\ntail: constant 0\n").is_err());
        assert!(parse_sequence("sequence s\nprefix: 1\n").is_err());
    }
}
