//! Text formats: Latin squares (`.lsq`), order-3 biased graphs (`.bg3`),
//! ternary rings (`.trn`) and planes (`.pln`).
//!
//! Blank lines and lines starting with `#` are ignored everywhere. Parse
//! failures carry the 1-based line and column of the offending token.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use crate::algebra::Quasigroup;
use crate::biased::{BiasedGraph3, Pair};
use crate::error::{Error, Result};
use crate::plane::Plane;
use crate::ternary::TernaryRing;

#[derive(Debug, Clone, Copy)]
struct Token<'a> {
    line: usize,
    column: usize,
    text: &'a str,
}

impl Token<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.column, msg)
    }

    fn number(&self) -> Result<usize> {
        self.text
            .parse()
            .map_err(|_| self.err(format!("expected a non-negative integer, found `{}`", self.text)))
    }
}

struct Row<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
}

impl<'a> Row<'a> {
    fn numbers(&self) -> Result<Vec<usize>> {
        self.tokens.iter().map(Token::number).collect()
    }

    fn expect_len(&self, n: usize) -> Result<()> {
        if self.tokens.len() == n {
            return Ok(());
        }
        let column = self.tokens.get(n).map_or_else(|| self.end(), |t| t.column);
        Err(Error::parse(self.line, column, format!("expected {n} values, found {}", self.tokens.len())))
    }

    fn end(&self) -> usize {
        self.tokens.last().map_or(1, |t| t.column + t.text.len())
    }
}

fn rows(text: &str) -> Vec<Row<'_>> {
    text.lines()
        .enumerate()
        .filter_map(|(i, line)| {
            let trimmed = line.trim_start();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                return None;
            }
            let mut tokens = Vec::new();
            let mut start = None;
            for (j, ch) in line.char_indices().chain([(line.len(), ' ')]) {
                match (ch.is_whitespace(), start) {
                    (false, None) => start = Some(j),
                    (true, Some(s)) => {
                        tokens.push(Token {
                            line: i + 1,
                            column: line[..s].chars().count() + 1,
                            text: &line[s..j],
                        });
                        start = None;
                    }
                    _ => {}
                }
            }
            Some(Row { line: i + 1, tokens })
        })
        .collect()
}

fn eof(text: &str, what: &str) -> Error {
    Error::parse(text.lines().count() + 1, 1, format!("unexpected end of file, expected {what}"))
}

fn in_range(t: &Token<'_>, v: usize, n: usize) -> Result<usize> {
    if v < n {
        Ok(v)
    } else {
        Err(t.err(format!("value {v} out of range 0..{n}")))
    }
}

/// A parsed Latin square with its optional declared loop identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquareFile {
    pub quasigroup: Quasigroup,
    pub identity: Option<usize>,
}

pub fn parse_lsq(text: &str) -> Result<LatinSquareFile> {
    let rows = rows(text);
    let mut it = rows.iter();
    let head = it.next().ok_or_else(|| eof(text, "the order"))?;
    head.expect_len(1)?;
    let n = head.tokens[0].number()?;
    if n == 0 {
        return Err(head.tokens[0].err("order must be positive"));
    }
    let mut table = Vec::with_capacity(n);
    for _ in 0..n {
        let r = it.next().ok_or_else(|| eof(text, "a table row"))?;
        r.expect_len(n)?;
        let mut row = Vec::with_capacity(n);
        for t in &r.tokens {
            row.push(in_range(t, t.number()?, n)?);
        }
        table.push(row);
    }
    let mut identity = None;
    if let Some(r) = it.next() {
        if r.tokens[0].text != "identity" {
            return Err(r.tokens[0].err("expected `identity <e>` or end of file"));
        }
        r.expect_len(2)?;
        let e = in_range(&r.tokens[1], r.tokens[1].number()?, n)?;
        identity = Some(e);
        if let Some(extra) = it.next() {
            return Err(extra.tokens[0].err("unexpected content after the identity line"));
        }
    }
    let quasigroup = Quasigroup::from_rows(table)?;
    if let Some(e) = identity {
        if (0..n).any(|x| quasigroup.op(e, x) != x || quasigroup.op(x, e) != x) {
            return Err(Error::precondition(format!("{e} is not a two-sided identity")));
        }
    }
    Ok(LatinSquareFile { quasigroup, identity })
}

pub fn write_lsq(q: &Quasigroup, identity: Option<usize>) -> String {
    let mut s = format!("{}\n", q.order());
    for row in q.rows() {
        let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    if let Some(e) = identity {
        let _ = writeln!(s, "identity {e}");
    }
    s
}

fn parse_pair(t: &Token<'_>) -> Result<Pair> {
    Pair::ALL
        .into_iter()
        .find(|p| p.name() == t.text)
        .ok_or_else(|| t.err(format!("expected a node pair 12, 23 or 13, found `{}`", t.text)))
}

pub fn parse_bg3(text: &str) -> Result<BiasedGraph3> {
    let rows = rows(text);
    let mut it = rows.iter();
    let head = it.next().ok_or_else(|| eof(text, "fiber sizes"))?;
    head.expect_len(3)?;
    let nums = head.numbers()?;
    let sizes = [nums[0], nums[1], nums[2]];
    let flags_row = it.next().ok_or_else(|| eof(text, "half-edge flags"))?;
    flags_row.expect_len(3)?;
    let mut half = [false; 3];
    for (i, t) in flags_row.tokens.iter().enumerate() {
        half[i] = match t.text {
            "0" => false,
            "1" => true,
            _ => return Err(t.err("half-edge flag must be 0 or 1")),
        };
    }
    let mut digons = BTreeSet::new();
    let mut triangles = BTreeSet::new();
    for r in it {
        match r.tokens[0].text {
            "D" => {
                r.expect_len(4)?;
                let p = parse_pair(&r.tokens[1])?;
                let i = in_range(&r.tokens[2], r.tokens[2].number()?, sizes[p.index()])?;
                let j = in_range(&r.tokens[3], r.tokens[3].number()?, sizes[p.index()])?;
                if i == j {
                    return Err(r.tokens[3].err("a digon needs two distinct edges"));
                }
                digons.insert((p, i.min(j), i.max(j)));
            }
            "T" => {
                r.expect_len(4)?;
                let mut v = [0; 3];
                for k in 0..3 {
                    let t = &r.tokens[k + 1];
                    v[k] = in_range(t, t.number()?, sizes[k])?;
                }
                triangles.insert((v[0], v[1], v[2]));
            }
            _ => return Err(r.tokens[0].err(format!("expected `D` or `T`, found `{}`", r.tokens[0].text))),
        }
    }
    BiasedGraph3::new(sizes, half, digons, triangles)
}

pub fn write_bg3(g: &BiasedGraph3) -> String {
    let [p, q, r] = g.sizes();
    let h = g.half_edges().map(u8::from);
    let mut s = format!("{p} {q} {r}\n{} {} {}\n", h[0], h[1], h[2]);
    for (pair, i, j) in g.balanced_digons() {
        let _ = writeln!(s, "D {} {i} {j}", pair.name());
    }
    for (a, b, c) in g.balanced_triangles() {
        let _ = writeln!(s, "T {a} {b} {c}");
    }
    s
}

pub fn parse_trn(text: &str) -> Result<TernaryRing> {
    let rows = rows(text);
    let mut it = rows.iter();
    let head = it.next().ok_or_else(|| eof(text, "the order"))?;
    head.expect_len(1)?;
    let n = head.tokens[0].number()?;
    if n < 2 {
        return Err(head.tokens[0].err("order must be at least 2"));
    }
    let mut t = Vec::with_capacity(n * n * n);
    for _ in 0..n * n {
        let r = it.next().ok_or_else(|| eof(text, "a table row"))?;
        r.expect_len(n)?;
        for tok in &r.tokens {
            t.push(in_range(tok, tok.number()?, n)?);
        }
    }
    if let Some(extra) = it.next() {
        return Err(extra.tokens[0].err("unexpected content after the table"));
    }
    TernaryRing::new(n, t)
}

/// One block per `x`, one line per `m`, entry `b` is `t(x, m, b)`.
pub fn write_trn(tr: &TernaryRing) -> String {
    let n = tr.order();
    let mut s = format!("{n}\n");
    for x in 0..n {
        for m in 0..n {
            let cells: Vec<String> = (0..n).map(|b| tr.t(x, m, b).to_string()).collect();
            s.push_str(&cells.join(" "));
            s.push('\n');
        }
        if x + 1 < n {
            s.push('\n');
        }
    }
    s
}

pub fn parse_pln(text: &str) -> Result<Plane> {
    let rows = rows(text);
    let mut it = rows.iter();
    let head = it.next().ok_or_else(|| eof(text, "point and line counts"))?;
    head.expect_len(2)?;
    let nums = head.numbers()?;
    let (np, nl) = (nums[0], nums[1]);
    let mut lines = Vec::with_capacity(nl);
    for _ in 0..nl {
        let r = it.next().ok_or_else(|| eof(text, "a line"))?;
        let mut line = Vec::with_capacity(r.tokens.len());
        for t in &r.tokens {
            line.push(in_range(t, t.number()?, np)?);
        }
        lines.push(line);
    }
    if let Some(extra) = it.next() {
        return Err(extra.tokens[0].err(format!("more than the declared {nl} lines")));
    }
    Plane::from_lines(np, lines)
}

pub fn write_pln(p: &Plane) -> String {
    let mut s = format!("{} {}\n", p.n_points(), p.n_lines());
    for l in 0..p.n_lines() {
        let cells: Vec<String> = p.line(l).iter().map(|x| x.to_string()).collect();
        s.push_str(&cells.join(" "));
        s.push('\n');
    }
    s
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::input(format!("{}: {e}", path.display())))
}
