//! The market file format, matching literals, and witness rendering.
//!
//! A market file is line based. `#` starts a comment and `;` ends a
//! statement like a newline does.
//!
//! ```text
//! firm f1 quota 2 prefs w1 > w4 > [w2 w3]
//! worker w1 prefs f3 > f1 > f2
//! worker w9 prefs
//! ```
//!
//! Groups separated by `>` run from best to worst, brackets hold an
//! indifference tier, and anybody left out is unacceptable. An empty list
//! after `prefs` accepts nobody.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use indiff_core::stability::BlockCase;
use indiff_core::{
    BlockingWitness, DominationWitness, Firm, Market, MarketError, Matching, MatchingError, Side, StabilityFailure,
    Worker,
};
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected {expected}, found {found}")]
    Unexpected { expected: &'static str, found: String },
    #[error("unexpected character `{0}`")]
    BadCharacter(char),
    #[error("invalid quota `{0}`")]
    BadQuota(String),
    #[error(transparent)]
    Market(#[from] MarketError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Gt,
    Open,
    Close,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("`{w}`"),
            Tok::Gt => "`>`".into(),
            Tok::Open => "`[`".into(),
            Tok::Close => "`]`".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pos {
    line: usize,
    column: usize,
}

impl Pos {
    fn err(self, kind: ParseErrorKind) -> ParseError {
        ParseError { line: self.line, column: self.column, kind }
    }
}

// One statement: its tokens with positions, and the position just past it.
struct Statement {
    toks: Vec<(Tok, Pos)>,
    end: Pos,
}

fn lex(text: &str) -> Result<Vec<Statement>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let code = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut chars = code.chars().enumerate().peekable();
        while let Some((c0, c)) = chars.next() {
            let pos = Pos { line, column: c0 + 1 };
            match c {
                c if c.is_whitespace() => {}
                ';' => out.push(Statement { toks: std::mem::take(&mut toks), end: pos }),
                '>' => toks.push((Tok::Gt, pos)),
                '[' => toks.push((Tok::Open, pos)),
                ']' => toks.push((Tok::Close, pos)),
                c if c.is_ascii_alphanumeric() || c == '_' => {
                    let mut word = String::from(c);
                    while let Some(&(_, d)) = chars.peek() {
                        if !(d.is_ascii_alphanumeric() || d == '_') {
                            break;
                        }
                        word.push(d);
                        chars.next();
                    }
                    toks.push((Tok::Word(word), pos));
                }
                c => return Err(pos.err(ParseErrorKind::BadCharacter(c))),
            }
        }
        let end = Pos { line, column: code.chars().count() + 1 };
        out.push(Statement { toks, end });
    }
    out.retain(|s| !s.toks.is_empty());
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [(Tok, Pos)],
    at: usize,
    end: Pos,
}

impl Cursor<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map_or(self.end, |(_, p)| *p)
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        let found = self.peek().map_or_else(|| "end of line".to_string(), Tok::describe);
        self.pos().err(ParseErrorKind::Unexpected { expected, found })
    }

    fn word(&mut self, expected: &'static str) -> Result<(String, Pos), ParseError> {
        match self.toks.get(self.at) {
            Some((Tok::Word(w), p)) => {
                self.at += 1;
                Ok((w.clone(), *p))
            }
            _ => Err(self.unexpected(expected)),
        }
    }

    fn name(&mut self) -> Result<(String, Pos), ParseError> {
        let (w, p) = self.word("a name")?;
        if !indiff_core::market::is_valid_name(&w) {
            return Err(p.err(ParseErrorKind::Market(MarketError::InvalidName(w))));
        }
        Ok((w, p))
    }

    fn keyword(&mut self, kw: &'static str) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Word(w)) if w == kw => {
                self.at += 1;
                Ok(())
            }
            _ => Err(self.unexpected(kw)),
        }
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn preflist(&mut self) -> Result<Vec<Vec<(String, Pos)>>, ParseError> {
        let mut tiers = Vec::new();
        if self.peek().is_none() {
            return Ok(tiers);
        }
        loop {
            if self.eat(&Tok::Open) {
                let mut tier = vec![self.name()?];
                while !self.eat(&Tok::Close) {
                    if self.peek().is_none() {
                        return Err(self.unexpected("`]`"));
                    }
                    tier.push(self.name()?);
                }
                tiers.push(tier);
            } else {
                tiers.push(vec![self.name()?]);
            }
            if self.peek().is_none() {
                return Ok(tiers);
            }
            if !self.eat(&Tok::Gt) {
                return Err(self.unexpected("`>` or end of line"));
            }
        }
    }
}

struct Decl {
    side: Side,
    name: String,
    quota: usize,
    tiers: Vec<Vec<(String, Pos)>>,
}

fn statement(s: &Statement) -> Result<Decl, ParseError> {
    let mut c = Cursor { toks: &s.toks, at: 0, end: s.end };
    let (head, _) = c.word("`firm` or `worker`")?;
    let side = match head.as_str() {
        "firm" => Side::Firm,
        "worker" => Side::Worker,
        _ => {
            c.at -= 1;
            return Err(c.unexpected("`firm` or `worker`"));
        }
    };
    let (name, _) = c.name()?;
    let mut quota = 0;
    if side == Side::Firm {
        c.keyword("quota")?;
        let (q, qpos) = c.word("a quota")?;
        quota = q.parse().map_err(|_| qpos.err(ParseErrorKind::BadQuota(q.clone())))?;
        if quota == 0 {
            return Err(qpos.err(ParseErrorKind::Market(MarketError::ZeroQuota { name })));
        }
    }
    c.keyword("prefs")?;
    let tiers = c.preflist()?;
    Ok(Decl { side, name, quota, tiers })
}

/// Parses and validates a market. Errors point at the offending token.
pub fn parse_market(text: &str) -> Result<Market, ParseError> {
    let mut decls = Vec::new();
    let mut declared: [BTreeMap<String, Pos>; 2] = [BTreeMap::new(), BTreeMap::new()];
    for s in lex(text)? {
        let d = statement(&s)?;
        let name_pos = s.toks[1].1;
        let slot = &mut declared[d.side as usize];
        if slot.insert(d.name.clone(), name_pos).is_some() {
            let kind = MarketError::DuplicateAgent { side: d.side, name: d.name };
            return Err(name_pos.err(kind.into()));
        }
        decls.push(d);
    }
    for d in &decls {
        let opposite = d.side.opposite();
        let mut seen = BTreeMap::new();
        for (name, pos) in d.tiers.iter().flatten() {
            if !declared[opposite as usize].contains_key(name) {
                let kind = MarketError::UnknownAgent { side: opposite, name: name.clone(), owner: d.name.clone() };
                return Err(pos.err(kind.into()));
            }
            if seen.insert(name.as_str(), ()).is_some() {
                let kind = MarketError::DuplicateTierMember { name: name.clone(), owner: d.name.clone() };
                return Err(pos.err(kind.into()));
            }
        }
    }
    let mut b = Market::builder();
    for d in decls {
        let tiers = d.tiers.into_iter().map(|t| t.into_iter().map(|(n, _)| n).collect()).collect();
        match d.side {
            Side::Firm => b.firm_owned(d.name, d.quota, tiers),
            Side::Worker => b.worker_owned(d.name, tiers),
        };
    }
    b.build().map_err(|e| ParseError { line: 1, column: 1, kind: e.into() })
}

fn write_prefs(out: &mut String, market: &Market, side: Side, tiers: &[Vec<usize>]) {
    let name = |i: usize| match side {
        Side::Firm => market.worker_name(Worker(i)),
        Side::Worker => market.firm_name(Firm(i)),
    };
    out.push_str(" prefs");
    for (k, tier) in tiers.iter().enumerate() {
        out.push_str(if k == 0 { " " } else { " > " });
        let mut members = tier.clone();
        members.sort_unstable();
        if members.len() == 1 {
            out.push_str(name(members[0]));
        } else {
            out.push('[');
            for (j, &m) in members.iter().enumerate() {
                if j > 0 {
                    out.push(' ');
                }
                out.push_str(name(m));
            }
            out.push(']');
        }
    }
}

/// Canonical text of a market: firms then workers, each in name order, tier
/// members in name order. [`parse_market`] reads it back unchanged.
pub fn serialize_market(market: &Market) -> String {
    let mut out = String::new();
    for f in market.firms() {
        let _ = write!(out, "firm {} quota {}", market.firm_name(f), market.quota(f));
        write_prefs(&mut out, market, Side::Firm, market.firm_pref(f).tiers());
        out.push('\n');
    }
    for w in market.workers() {
        let _ = write!(out, "worker {}", market.worker_name(w));
        write_prefs(&mut out, market, Side::Worker, market.worker_pref(w).tiers());
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum MatchingParseError {
    #[error("malformed block `{0}`; expected `firm:worker,worker`")]
    Malformed(String),
    #[error("unknown firm `{0}`")]
    UnknownFirm(String),
    #[error("unknown worker `{0}`")]
    UnknownWorker(String),
    #[error(transparent)]
    Invalid(#[from] MatchingError),
}

/// Parses a matching literal such as `f1:w2,w3;f2:w4`. Whitespace is
/// ignored, braces around a worker list are allowed, and `-` or an empty
/// literal is the empty matching.
pub fn parse_matching(market: &Market, literal: &str) -> Result<Matching, MatchingParseError> {
    let compact: String = literal.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() || compact == "-" {
        return Ok(Matching::empty(market));
    }
    let mut blocks = Vec::new();
    for block in compact.split(';').filter(|b| !b.is_empty()) {
        let (firm, workers) = block.split_once(':').ok_or_else(|| MatchingParseError::Malformed(block.into()))?;
        let f = market.find_firm(firm).ok_or_else(|| MatchingParseError::UnknownFirm(firm.into()))?;
        let workers = match workers.strip_prefix('{') {
            Some(rest) => rest.strip_suffix('}').ok_or_else(|| MatchingParseError::Malformed(block.into()))?,
            None => workers,
        };
        let ws = workers
            .split(',')
            .filter(|w| !w.is_empty())
            .map(|w| market.find_worker(w).ok_or_else(|| MatchingParseError::UnknownWorker(w.into())))
            .collect::<Result<Vec<_>, _>>()?;
        blocks.push((f, ws));
    }
    Ok(Matching::new(market, &blocks)?)
}

/// `C={f1,w1,w3} nu={f1:w1,w3}`. Members unmatched by `nu` appear only in
/// `C`.
pub fn domination_witness(market: &Market, w: &DominationWitness) -> String {
    let members: Vec<&str> = w.assignment.members().into_iter().map(|a| market.agent_name(a)).collect();
    let nu = market.assignment_literal(w.assignment.firm_blocks());
    let nu = if nu == "-" { String::new() } else { nu };
    format!("C={{{}}} nu={{{}}}", members.join(","), nu)
}

/// `(f1,w3) out=w2` for a full firm, `(f1,w3) vacancy` otherwise.
pub fn blocking_witness(market: &Market, w: &BlockingWitness) -> String {
    let pair = format!("({},{})", market.firm_name(w.firm), market.worker_name(w.worker));
    match w.case {
        BlockCase::QuotaFull { displaced } => format!("{pair} out={}", market.worker_name(displaced)),
        BlockCase::Vacancy => format!("{pair} vacancy"),
    }
}

pub fn stability_failure(market: &Market, f: &StabilityFailure) -> String {
    match f {
        StabilityFailure::NotIndividuallyRational(a) => format!("unacceptable partner of {}", market.agent_name(*a)),
        StabilityFailure::Blocked(w) => blocking_witness(market, w),
    }
}
