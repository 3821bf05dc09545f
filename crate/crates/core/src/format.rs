//! Plain-text model documents.
//!
//! ```text
//! kind pbck            # pea | pbck | hoop
//! elements 0 a b c 1
//! top 1                # `unit` for hoops
//! table meet
//! 0 0 0 0 0
//! ...
//! ```
//!
//! Each `table NAME` line is followed by `n` rows of `n` element names; row `i`, column
//! `j` holds `op(eᵢ, eⱼ)` in declaration order. `#` starts a comment.

use std::fmt;

use thiserror::Error;

use crate::algebra::FiniteAlgebra;
use crate::bck::BckAlgebra;
use crate::error::{Error, Result};
use crate::hoop::PseudoHoop;
use crate::table::{Table, KEYWORDS, MAX_SIZE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Pea,
    Pbck,
    Hoop,
}

impl Kind {
    pub fn as_str(self) -> &'static str {
        match self {
            Kind::Pea => "pea",
            Kind::Pbck => "pbck",
            Kind::Hoop => "hoop",
        }
    }

    pub fn parse(s: &str) -> Option<Kind> {
        match s {
            "pea" => Some(Kind::Pea),
            "pbck" => Some(Kind::Pbck),
            "hoop" => Some(Kind::Hoop),
            _ => None,
        }
    }

    /// Table names in emission order.
    pub fn tables(self) -> [&'static str; 3] {
        match self {
            Kind::Pea => ["meet", "sim", "bsim"],
            Kind::Pbck => ["meet", "imp", "simp"],
            Kind::Hoop => ["prod", "imp", "simp"],
        }
    }

    fn top_keyword(self) -> &'static str {
        match self {
            Kind::Hoop => "unit",
            _ => "top",
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected `{0}`")]
    Expected(&'static str),
    #[error("unknown kind {0:?}")]
    UnknownKind(String),
    #[error("unknown directive {0:?}")]
    UnknownDirective(String),
    #[error("`{0}` given twice")]
    DuplicateHeader(&'static str),
    #[error("expected `{expected}` for this kind, found `{found}`")]
    WrongTopKeyword { expected: &'static str, found: String },
    #[error("invalid element name {0:?}")]
    BadName(String),
    #[error("element {0:?} declared twice")]
    DuplicateElement(String),
    #[error("{0} elements exceed the supported maximum")]
    TooLarge(usize),
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("expected 1 argument, found {0}")]
    Arity(usize),
    #[error("row has {found} entries, expected {expected}")]
    RowLength { expected: usize, found: usize },
    #[error("table {table} has {found} rows, expected {expected}")]
    RowCount {
        table: String,
        expected: usize,
        found: usize,
    },
    #[error("unknown table {name:?} for kind {kind}")]
    UnknownTable { name: String, kind: Kind },
    #[error("table {0} given twice")]
    DuplicateTable(String),
    #[error("missing table {0}")]
    MissingTable(&'static str),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelDocument {
    pub kind: Kind,
    pub names: Vec<String>,
    pub top: usize,
    /// In the order of [`Kind::tables`].
    pub tables: Vec<Table>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Pea(FiniteAlgebra),
    Pbck(BckAlgebra),
    Hoop(PseudoHoop),
}

impl Model {
    pub fn kind(&self) -> Kind {
        match self {
            Model::Pea(_) => Kind::Pea,
            Model::Pbck(_) => Kind::Pbck,
            Model::Hoop(_) => Kind::Hoop,
        }
    }

    pub fn names(&self) -> &[String] {
        match self {
            Model::Pea(a) => a.names(),
            Model::Pbck(b) => b.names(),
            Model::Hoop(h) => h.names(),
        }
    }

    pub fn to_document(&self) -> ModelDocument {
        match self {
            Model::Pea(a) => ModelDocument::from_pea(a),
            Model::Pbck(b) => ModelDocument::from_pbck(b),
            Model::Hoop(h) => ModelDocument::from_hoop(h),
        }
    }
}

impl ModelDocument {
    pub fn from_pea(a: &FiniteAlgebra) -> Self {
        ModelDocument {
            kind: Kind::Pea,
            names: a.names().to_vec(),
            top: a.top(),
            tables: vec![a.meet_table().clone(), a.sim_table().clone(), a.bsim_table().clone()],
        }
    }

    pub fn from_pbck(b: &BckAlgebra) -> Self {
        ModelDocument {
            kind: Kind::Pbck,
            names: b.names().to_vec(),
            top: b.top(),
            tables: vec![b.meet_table().clone(), b.imp_table().clone(), b.simp_table().clone()],
        }
    }

    pub fn from_hoop(h: &PseudoHoop) -> Self {
        ModelDocument {
            kind: Kind::Hoop,
            names: h.names().to_vec(),
            top: h.unit(),
            tables: vec![h.prod_table().clone(), h.imp_table().clone(), h.simp_table().clone()],
        }
    }

    pub fn into_model(self) -> Result<Model> {
        let [t0, t1, t2]: [Table; 3] = self
            .tables
            .try_into()
            .map_err(|_| Error::Input("a document holds exactly three tables".into()))?;
        Ok(match self.kind {
            Kind::Pea => Model::Pea(FiniteAlgebra::new(self.names, self.top, t0, t1, t2)?),
            Kind::Pbck => Model::Pbck(BckAlgebra::new(self.names, self.top, t0, t1, t2)?),
            Kind::Hoop => Model::Hoop(PseudoHoop::new(self.names, self.top, t0, t1, t2)?),
        })
    }
}

struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

fn lex(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        let mut col = 0;
        for (byte, ch) in content.char_indices() {
            col += 1;
            if ch.is_whitespace() {
                if let Some((c, s)) = start.take() {
                    tokens.push((c, &content[s..byte]));
                }
            } else if start.is_none() {
                start = Some((col, byte));
            }
        }
        if let Some((c, s)) = start {
            tokens.push((c, &content[s..]));
        }
        if !tokens.is_empty() {
            out.push(Line { number: i + 1, tokens });
        }
    }
    out
}

fn err(line: usize, col: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, col, kind }
}

type Lines<'a, 'b> = std::iter::Peekable<std::slice::Iter<'a, Line<'b>>>;

fn header<'a, 'b>(
    it: &mut Lines<'a, 'b>,
    end_line: usize,
    keyword: &'static str,
    alt: Option<&'static str>,
) -> std::result::Result<&'a Line<'b>, ParseError> {
    match it.next() {
        Some(l) if l.tokens[0].1 == keyword => Ok(l),
        Some(l) => {
            if let Some(expected) = alt {
                if l.tokens[0].1 == "top" || l.tokens[0].1 == "unit" {
                    return Err(err(
                        l.number,
                        l.tokens[0].0,
                        ParseErrorKind::WrongTopKeyword {
                            expected,
                            found: l.tokens[0].1.to_string(),
                        },
                    ));
                }
            }
            Err(err(l.number, l.tokens[0].0, ParseErrorKind::Expected(keyword)))
        }
        None => Err(err(end_line, 1, ParseErrorKind::Expected(keyword))),
    }
}

pub fn parse_model(text: &str) -> std::result::Result<ModelDocument, ParseError> {
    let lines = lex(text);
    let end_line = text.lines().count() + 1;
    let mut it = lines.iter().peekable();

    let kl = header(&mut it, end_line, "kind", None)?;
    if kl.tokens.len() != 2 {
        return Err(err(
            kl.number,
            kl.tokens[0].0,
            ParseErrorKind::Arity(kl.tokens.len() - 1),
        ));
    }
    let kind = Kind::parse(kl.tokens[1].1).ok_or_else(|| {
        err(
            kl.number,
            kl.tokens[1].0,
            ParseErrorKind::UnknownKind(kl.tokens[1].1.into()),
        )
    })?;

    let el = header(&mut it, end_line, "elements", None)?;
    let mut names: Vec<String> = Vec::new();
    for &(col, tok) in &el.tokens[1..] {
        if names.iter().any(|n| n == tok) {
            return Err(err(el.number, col, ParseErrorKind::DuplicateElement(tok.into())));
        }
        if KEYWORDS.contains(&tok) {
            return Err(err(el.number, col, ParseErrorKind::BadName(tok.into())));
        }
        names.push(tok.to_string());
    }
    let n = names.len();
    if n == 0 {
        return Err(err(
            el.number,
            el.tokens[0].0,
            ParseErrorKind::Expected("elements <name>+"),
        ));
    }
    if n > MAX_SIZE {
        return Err(err(el.number, el.tokens[0].0, ParseErrorKind::TooLarge(n)));
    }
    let lookup = |line: usize, col: usize, tok: &str| {
        names
            .iter()
            .position(|x| x == tok)
            .ok_or_else(|| err(line, col, ParseErrorKind::UnknownElement(tok.into())))
    };

    let tk = kind.top_keyword();
    let tl = header(&mut it, end_line, tk, Some(tk))?;
    if tl.tokens.len() != 2 {
        return Err(err(
            tl.number,
            tl.tokens[0].0,
            ParseErrorKind::Arity(tl.tokens.len() - 1),
        ));
    }
    let top = lookup(tl.number, tl.tokens[1].0, tl.tokens[1].1)?;

    let expected = kind.tables();
    let mut slots: [Option<Table>; 3] = [None, None, None];
    while let Some(l) = it.next() {
        let (col, word) = l.tokens[0];
        if word != "table" {
            if KEYWORDS.contains(&word) {
                return Err(err(
                    l.number,
                    col,
                    ParseErrorKind::DuplicateHeader(KEYWORDS.iter().find(|d| **d == word).unwrap()),
                ));
            }
            return Err(err(l.number, col, ParseErrorKind::UnknownDirective(word.into())));
        }
        if l.tokens.len() != 2 {
            return Err(err(l.number, col, ParseErrorKind::Arity(l.tokens.len() - 1)));
        }
        let (ncol, tname) = l.tokens[1];
        let slot = expected.iter().position(|t| *t == tname).ok_or_else(|| {
            err(
                l.number,
                ncol,
                ParseErrorKind::UnknownTable {
                    name: tname.into(),
                    kind,
                },
            )
        })?;
        if slots[slot].is_some() {
            return Err(err(l.number, ncol, ParseErrorKind::DuplicateTable(tname.into())));
        }
        let mut cells = Vec::with_capacity(n * n);
        for found in 0..n {
            let row_count = |line: usize| {
                err(
                    line,
                    1,
                    ParseErrorKind::RowCount {
                        table: tname.into(),
                        expected: n,
                        found,
                    },
                )
            };
            let row = match it.peek() {
                None => return Err(row_count(end_line)),
                Some(r) if KEYWORDS.contains(&r.tokens[0].1) && !names.iter().any(|x| x == r.tokens[0].1) => {
                    return Err(row_count(r.number))
                }
                Some(_) => it.next().unwrap(),
            };
            if row.tokens.len() != n {
                let col = row.tokens.get(n).map_or(row.tokens[row.tokens.len() - 1].0, |t| t.0);
                return Err(err(
                    row.number,
                    col,
                    ParseErrorKind::RowLength {
                        expected: n,
                        found: row.tokens.len(),
                    },
                ));
            }
            for &(c, tok) in &row.tokens {
                cells.push(lookup(row.number, c, tok)? as u8);
            }
        }
        slots[slot] = Some(Table::from_cells(n, cells));
    }
    let mut tables = Vec::with_capacity(3);
    for (i, slot) in slots.into_iter().enumerate() {
        tables.push(slot.ok_or_else(|| err(end_line, 1, ParseErrorKind::MissingTable(expected[i])))?);
    }
    Ok(ModelDocument {
        kind,
        names,
        top,
        tables,
    })
}

pub fn emit_model(doc: &ModelDocument) -> String {
    let mut out = String::new();
    out.push_str(&format!("kind {}\n", doc.kind));
    out.push_str(&format!("elements {}\n", doc.names.join(" ")));
    out.push_str(&format!("{} {}\n", doc.kind.top_keyword(), doc.names[doc.top]));
    for (name, table) in doc.kind.tables().iter().zip(&doc.tables) {
        out.push_str(&format!("table {name}\n"));
        for row in table.rows() {
            let row: Vec<&str> = row.iter().map(|&x| doc.names[x].as_str()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

/// Parses and builds the model in one step.
pub fn read_model(text: &str) -> Result<Model> {
    parse_model(text)?.into_model()
}

pub fn write_model(m: &Model) -> String {
    emit_model(&m.to_document())
}
