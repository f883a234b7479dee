//! Text syntax for diagrams, theorems and proof scripts.
//!
//! ```text
//! theorem  := diagram "|-" diagram
//! diagram  := unitary | "(" diagram "&" diagram ")"
//! unitary  := "{" "contours:" ident* ";" "zones:" zone* ";" "shaded:" zone* "}"
//! zone     := "(" ident* ")"
//! ```
//!
//! A script is a `theorem <name> : <theorem>` header followed by one statement
//! per line:
//!
//! ```text
//! apply <rule> at <goal> <path> <args>
//! discharge <goal>
//! tactic <name> at <goal>
//! tactic <name> at <goal> begin
//!   apply ...
//!   discharge ...
//! end
//! ```
//!
//! A bare `tactic` line is re-run when the script is loaded. A `begin`/`end`
//! block records the steps the tactic produced; by default those steps are
//! replayed, and [`ReplayMode::Rerun`] runs the tactic again and checks that it
//! still produces them. Paths are `-` for the root or `L`/`R` steps joined by
//! `/`. `#` starts a comment that runs to the end of the line.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::diagram::{
    is_identifier, CompoundDiagram, ContourLabel, DiagramError, Direction, Path, UnitaryDiagram,
    Zone,
};
use crate::engine::{EngineError, Proof, StepKind, StepRecord, Subgoal};
use crate::rules::{CopyDirection, Rule, RuleApplication, RuleArg, RuleKind};
use crate::tactics::{self, TacticError, TacticResult};

/// A region of the input: byte offsets plus 1-based line and column of the start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

impl SourceSpan {
    fn at(text: &str, start: usize, end: usize) -> Self {
        let before = &text[..start];
        let line = before.matches('\n').count() + 1;
        let line_start = before.rfind('\n').map_or(0, |i| i + 1);
        let column = text[line_start..start].chars().count() + 1;
        SourceSpan {
            start,
            end,
            line,
            column,
        }
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayCause {
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Tactic(#[from] TacticError),
    #[error("tactic `{0}` no longer produces the recorded steps")]
    Diverged(String),
}

impl ReplayCause {
    pub fn code(&self) -> &'static str {
        match self {
            ReplayCause::Engine(e) => e.code(),
            ReplayCause::Tactic(e) => e.code(),
            ReplayCause::Diverged(_) => "tactic-diverged",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("{span}: syntax error: {message}")]
    Syntax { span: SourceSpan, message: String },
    #[error("{span}: {error}")]
    Semantic { span: SourceSpan, error: DiagramError },
    #[error("{span}: step {step}: {cause}")]
    Replay {
        step: usize,
        span: SourceSpan,
        cause: ReplayCause,
    },
}

impl TextError {
    pub fn span(&self) -> SourceSpan {
        match self {
            TextError::Syntax { span, .. }
            | TextError::Semantic { span, .. }
            | TextError::Replay { span, .. } => *span,
        }
    }

    pub fn code(&self) -> &'static str {
        match self {
            TextError::Syntax { .. } => "syntax-error",
            TextError::Semantic { .. } => "semantic-error",
            TextError::Replay { .. } => "replay-error",
        }
    }

    pub fn message(&self) -> String {
        match self {
            TextError::Syntax { message, .. } => message.clone(),
            TextError::Semantic { error, .. } => error.to_string(),
            TextError::Replay { step, cause, .. } => format!("step {step}: {cause}"),
        }
    }
}

// ---------------------------------------------------------------------------
// Lexer

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LBrace,
    RBrace,
    LParen,
    RParen,
    Semi,
    Colon,
    Amp,
    Turnstile,
    Slash,
    Dash,
    Ident(String),
    Number(usize),
    Newline,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Semi => f.write_str("`;`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Amp => f.write_str("`&`"),
            Tok::Turnstile => f.write_str("`|-`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Dash => f.write_str("`-`"),
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Number(n) => write!(f, "`{n}`"),
            Tok::Newline => f.write_str("end of line"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, TextError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let single = match c {
            b'{' => Some(Tok::LBrace),
            b'}' => Some(Tok::RBrace),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            b';' => Some(Tok::Semi),
            b':' => Some(Tok::Colon),
            b'&' => Some(Tok::Amp),
            b'/' => Some(Tok::Slash),
            b'-' => Some(Tok::Dash),
            b'\n' => Some(Tok::Newline),
            _ => None,
        };
        if let Some(tok) = single {
            i += 1;
            out.push(Token { tok, start, end: i });
            continue;
        }
        match c {
            b' ' | b'\t' | b'\r' => i += 1,
            b'#' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'|' if bytes.get(i + 1) == Some(&b'-') => {
                i += 2;
                out.push(Token {
                    tok: Tok::Turnstile,
                    start,
                    end: i,
                });
            }
            c if c.is_ascii_alphabetic() => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(text[start..i].to_string()),
                    start,
                    end: i,
                });
            }
            c if c.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..i].parse().map_err(|_| TextError::Syntax {
                    span: SourceSpan::at(text, start, i),
                    message: "number too large".into(),
                })?;
                out.push(Token {
                    tok: Tok::Number(n),
                    start,
                    end: i,
                });
            }
            _ => {
                let ch = text[start..].chars().next().expect("in bounds");
                return Err(TextError::Syntax {
                    span: SourceSpan::at(text, start, start + ch.len_utf8()),
                    message: format!("unexpected character `{ch}`"),
                });
            }
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        start: text.len(),
        end: text.len(),
    });
    Ok(out)
}

// ---------------------------------------------------------------------------
// Parser

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Token>,
    pos: usize,
    /// Inside diagrams line breaks are insignificant.
    skip_newlines: bool,
}

type PResult<T> = Result<T, TextError>;

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> PResult<Self> {
        Ok(Parser {
            text,
            toks: lex(text)?,
            pos: 0,
            skip_newlines: false,
        })
    }

    fn settle(&mut self) {
        if self.skip_newlines {
            while self.toks[self.pos].tok == Tok::Newline {
                self.pos += 1;
            }
        }
    }

    fn peek(&mut self) -> &Tok {
        self.settle();
        &self.toks[self.pos].tok
    }

    fn span_here(&mut self) -> SourceSpan {
        self.settle();
        let t = &self.toks[self.pos];
        SourceSpan::at(self.text, t.start, t.end)
    }

    fn span_from(&self, start: usize) -> SourceSpan {
        let end = self.toks[self.pos.saturating_sub(1)].end.max(start);
        SourceSpan::at(self.text, start, end)
    }

    fn offset(&mut self) -> usize {
        self.settle();
        self.toks[self.pos].start
    }

    fn bump(&mut self) -> Tok {
        self.settle();
        let t = self.toks[self.pos].tok.clone();
        if t != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&mut self, expected: &str) -> PResult<T> {
        let found = self.peek().clone();
        Err(TextError::Syntax {
            span: self.span_here(),
            message: format!("expected {expected}, found {found}"),
        })
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(&tok.to_string())
        }
    }

    fn keyword(&mut self, word: &str) -> PResult<()> {
        match self.peek() {
            Tok::Ident(s) if s == word => {
                self.bump();
                Ok(())
            }
            _ => self.error(&format!("`{word}`")),
        }
    }

    fn at_keyword(&mut self, word: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == word)
    }

    fn ident(&mut self, what: &str) -> PResult<(String, SourceSpan)> {
        let span = self.span_here();
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok((s, span))
            }
            _ => self.error(what),
        }
    }

    fn number(&mut self, what: &str) -> PResult<usize> {
        match *self.peek() {
            Tok::Number(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.error(what),
        }
    }

    fn label(&mut self) -> PResult<ContourLabel> {
        let (name, span) = self.ident("a contour label")?;
        ContourLabel::new(name).map_err(|error| TextError::Semantic { span, error })
    }

    fn labels_until(&mut self, stop: Tok) -> PResult<BTreeSet<ContourLabel>> {
        let mut out = BTreeSet::new();
        while *self.peek() != stop {
            match self.peek() {
                Tok::Ident(_) => {
                    out.insert(self.label()?);
                }
                _ => return self.error(&format!("a contour label or {stop}")),
            }
        }
        self.bump();
        Ok(out)
    }

    fn zone(&mut self) -> PResult<Zone> {
        self.expect(Tok::LParen)?;
        Ok(Zone::new(self.labels_until(Tok::RParen)?))
    }

    fn zones_until(&mut self, stop: Tok) -> PResult<BTreeSet<Zone>> {
        let mut out = BTreeSet::new();
        while *self.peek() != stop {
            if *self.peek() != Tok::LParen {
                return self.error(&format!("a zone or {stop}"));
            }
            out.insert(self.zone()?);
        }
        self.bump();
        Ok(out)
    }

    fn section(&mut self, name: &str) -> PResult<()> {
        self.keyword(name)?;
        self.expect(Tok::Colon)
    }

    fn unitary(&mut self) -> PResult<UnitaryDiagram> {
        let start = self.offset();
        self.expect(Tok::LBrace)?;
        self.section("contours")?;
        let contours = self.labels_until(Tok::Semi)?;
        self.section("zones")?;
        let zones = self.zones_until(Tok::Semi)?;
        self.section("shaded")?;
        let shaded = self.zones_until(Tok::RBrace)?;
        UnitaryDiagram::new(contours, zones, shaded).map_err(|error| TextError::Semantic {
            span: self.span_from(start),
            error,
        })
    }

    fn diagram(&mut self) -> PResult<CompoundDiagram> {
        match self.peek() {
            Tok::LBrace => Ok(self.unitary()?.into()),
            Tok::LParen => {
                self.bump();
                let left = self.diagram()?;
                self.expect(Tok::Amp)?;
                let right = self.diagram()?;
                self.expect(Tok::RParen)?;
                Ok(CompoundDiagram::conj(left, right))
            }
            _ => self.error("`{` or `(`"),
        }
    }

    fn theorem(&mut self) -> PResult<Subgoal> {
        let saved = self.skip_newlines;
        self.skip_newlines = true;
        let ante = self.diagram()?;
        self.expect(Tok::Turnstile)?;
        let cons = self.diagram()?;
        self.skip_newlines = saved;
        Ok(Subgoal::new(ante, cons).expect("parsed diagrams contain no implication"))
    }

    fn end_of_input(&mut self) -> PResult<()> {
        self.skip_newlines = true;
        self.expect(Tok::Eof)
    }

    fn path(&mut self) -> PResult<Path> {
        if *self.peek() == Tok::Dash {
            self.bump();
            return Ok(Path::root());
        }
        let mut steps = Vec::new();
        loop {
            let (s, _) = self.ident("a path (`-` or L/R steps)")?;
            steps.push(match s.as_str() {
                "L" => Direction::Left,
                "R" => Direction::Right,
                _ => {
                    self.pos -= 1;
                    return self.error("`L` or `R`");
                }
            });
            if *self.peek() != Tok::Slash {
                return Ok(Path::new(steps));
            }
            self.bump();
        }
    }

    fn direction(&mut self) -> PResult<CopyDirection> {
        let (s, _) = self.ident("`left_to_right` or `right_to_left`")?;
        CopyDirection::from_name(&s).map_or_else(
            || {
                self.pos -= 1;
                self.error("`left_to_right` or `right_to_left`")
            },
            Ok,
        )
    }

    fn rule_args(&mut self, kind: RuleKind) -> PResult<Rule> {
        let arg = match kind {
            RuleKind::EraseContour | RuleKind::IntroduceContour => RuleArg::Contour(self.label()?),
            RuleKind::EraseShading | RuleKind::IntroduceShadedZone | RuleKind::RemoveShadedZone => {
                RuleArg::Zone(self.zone()?)
            }
            RuleKind::Combine | RuleKind::Idempotency => RuleArg::None,
            RuleKind::CopyContour => RuleArg::CopyContour(self.direction()?, self.label()?),
            RuleKind::CopyShading => {
                let dir = self.direction()?;
                let mut zones = BTreeSet::new();
                while *self.peek() == Tok::LParen {
                    zones.insert(self.zone()?);
                }
                if zones.is_empty() {
                    return self.error("a zone");
                }
                RuleArg::CopyShading(dir, zones)
            }
        };
        Ok(Rule::build(kind, arg).expect("argument shape follows the rule kind"))
    }

    fn end_of_line(&mut self) -> PResult<()> {
        match self.peek() {
            Tok::Newline => {
                self.bump();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => self.error("end of line"),
        }
    }

    fn blank_lines(&mut self) {
        while *self.peek() == Tok::Newline {
            self.bump();
        }
    }

    /// `apply ...` or `discharge ...`, without the line break.
    fn step(&mut self) -> PResult<(SourceSpan, StepRecord)> {
        let start = self.offset();
        let record = if self.at_keyword("discharge") {
            self.bump();
            StepRecord::discharge(self.number("a goal index")?)
        } else if self.at_keyword("apply") {
            self.bump();
            let (name, span) = self.ident("a rule name")?;
            let kind = RuleKind::from_name(&name).ok_or_else(|| TextError::Syntax {
                span,
                message: format!("unknown rule `{name}`"),
            })?;
            self.keyword("at")?;
            let goal_index = self.number("a goal index")?;
            let path = self.path()?;
            let rule = self.rule_args(kind)?;
            StepRecord::rule(RuleApplication {
                goal_index,
                path,
                rule,
            })
        } else {
            return self.error("`apply` or `discharge`");
        };
        Ok((self.span_from(start), record))
    }

    fn script(&mut self) -> PResult<ProofScript> {
        self.blank_lines();
        self.keyword("theorem")?;
        let (name, _) = self.ident("a theorem name")?;
        self.expect(Tok::Colon)?;
        let theorem = self.theorem()?;
        self.end_of_line()?;
        let mut items = Vec::new();
        loop {
            self.blank_lines();
            if *self.peek() == Tok::Eof {
                break;
            }
            if !self.at_keyword("tactic") {
                let (span, step) = self.step()?;
                self.end_of_line()?;
                items.push(ScriptItem::Step { span, step });
                continue;
            }
            let start = self.offset();
            self.bump();
            let (name, name_span) = self.ident("a tactic name")?;
            if tactics::lookup(&name).is_none() {
                return Err(TextError::Syntax {
                    span: name_span,
                    message: format!("unknown tactic `{name}`"),
                });
            }
            self.keyword("at")?;
            let goal = self.number("a goal index")?;
            let steps = if self.at_keyword("begin") {
                self.bump();
                self.end_of_line()?;
                let mut steps = Vec::new();
                loop {
                    self.blank_lines();
                    if self.at_keyword("end") {
                        self.bump();
                        break;
                    }
                    let (span, step) = self.step()?;
                    self.end_of_line()?;
                    steps.push((span, step.by(name.as_str())));
                }
                Some(steps)
            } else {
                None
            };
            let span = self.span_from(start);
            self.end_of_line()?;
            items.push(ScriptItem::Tactic {
                span,
                name,
                goal,
                steps,
            });
        }
        Ok(ProofScript {
            name,
            theorem,
            items,
        })
    }
}

pub fn parse_unitary(text: &str) -> Result<UnitaryDiagram, TextError> {
    let mut p = Parser::new(text)?;
    p.skip_newlines = true;
    let d = p.unitary()?;
    p.end_of_input()?;
    Ok(d)
}

pub fn parse_diagram(text: &str) -> Result<CompoundDiagram, TextError> {
    let mut p = Parser::new(text)?;
    p.skip_newlines = true;
    let d = p.diagram()?;
    p.end_of_input()?;
    Ok(d)
}

pub fn parse_theorem(text: &str) -> Result<Subgoal, TextError> {
    Ok(parse_named_theorem(text)?.1)
}

/// A bare theorem, or one with a `theorem <name> :` header.
pub fn parse_named_theorem(text: &str) -> Result<(Option<String>, Subgoal), TextError> {
    let mut p = Parser::new(text)?;
    p.skip_newlines = true;
    let name = if p.at_keyword("theorem") {
        p.bump();
        let (name, _) = p.ident("a theorem name")?;
        p.expect(Tok::Colon)?;
        Some(name)
    } else {
        None
    };
    let t = p.theorem()?;
    p.end_of_input()?;
    Ok((name, t))
}

pub fn parse_path(text: &str) -> Result<Path, TextError> {
    let mut p = Parser::new(text)?;
    let path = p.path()?;
    p.end_of_input()?;
    Ok(path)
}

pub fn parse_zone(text: &str) -> Result<Zone, TextError> {
    let mut p = Parser::new(text)?;
    let z = p.zone()?;
    p.end_of_input()?;
    Ok(z)
}

/// One step line, e.g. `apply combine at 0 L`.
pub fn parse_step(text: &str) -> Result<StepRecord, TextError> {
    let mut p = Parser::new(text)?;
    let (_, step) = p.step()?;
    p.end_of_input()?;
    Ok(step)
}

// ---------------------------------------------------------------------------
// Printer

fn write_zones(out: &mut String, zones: &BTreeSet<Zone>) {
    for z in zones {
        write!(out, " {z}").expect("string write");
    }
}

pub fn print_unitary(d: &UnitaryDiagram) -> String {
    let mut out = String::from("{contours:");
    for c in d.contours() {
        write!(out, " {c}").expect("string write");
    }
    out.push_str("; zones:");
    write_zones(&mut out, d.zones());
    out.push_str("; shaded:");
    write_zones(&mut out, d.shaded());
    out.push('}');
    out
}

pub fn print_diagram(d: &CompoundDiagram) -> String {
    match d {
        CompoundDiagram::Unitary(u) => print_unitary(u),
        CompoundDiagram::Conjunction(l, r) => {
            format!("({} & {})", print_diagram(l), print_diagram(r))
        }
        CompoundDiagram::Implication(a, c) => {
            format!("{} |- {}", print_diagram(a), print_diagram(c))
        }
    }
}

pub fn print_theorem(t: &Subgoal) -> String {
    format!(
        "{} |- {}",
        print_diagram(t.antecedent()),
        print_diagram(t.consequent())
    )
}

fn print_rule_args(rule: &Rule) -> String {
    let mut out = String::new();
    match rule.arg() {
        RuleArg::None => {}
        RuleArg::Contour(c) => write!(out, " {c}").expect("string write"),
        RuleArg::Zone(z) => write!(out, " {z}").expect("string write"),
        RuleArg::CopyContour(d, c) => write!(out, " {} {c}", d.name()).expect("string write"),
        RuleArg::CopyShading(d, zs) => {
            write!(out, " {}", d.name()).expect("string write");
            write_zones(&mut out, &zs);
        }
    }
    out
}

pub fn print_rule_application(app: &RuleApplication) -> String {
    format!(
        "apply {} at {} {}{}",
        app.rule.kind().name(),
        app.goal_index,
        app.path,
        print_rule_args(&app.rule)
    )
}

/// The surface form of a step, without provenance.
pub fn print_step(step: &StepRecord) -> String {
    match &step.kind {
        StepKind::Rule(app) => print_rule_application(app),
        StepKind::Discharge(i) => format!("discharge {i}"),
    }
}

// ---------------------------------------------------------------------------
// Scripts

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScriptItem {
    Step {
        span: SourceSpan,
        step: StepRecord,
    },
    /// `steps` is `None` for a bare invocation to be re-run on load.
    Tactic {
        span: SourceSpan,
        name: String,
        goal: usize,
        steps: Option<Vec<(SourceSpan, StepRecord)>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofScript {
    pub name: String,
    pub theorem: Subgoal,
    pub items: Vec<ScriptItem>,
}

/// Which record of a tactic block is authoritative on load.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReplayMode {
    /// Replay the recorded rule steps.
    #[default]
    Recorded,
    /// Re-run each tactic and require it to produce the recorded steps.
    Rerun,
}

impl ProofScript {
    /// The recorded steps in order; bare tactic invocations contribute nothing.
    pub fn steps(&self) -> Vec<StepRecord> {
        let mut out = Vec::new();
        for item in &self.items {
            match item {
                ScriptItem::Step { step, .. } => out.push(step.clone()),
                ScriptItem::Tactic {
                    steps: Some(steps), ..
                } => out.extend(steps.iter().map(|(_, s)| s.clone())),
                ScriptItem::Tactic { steps: None, .. } => {}
            }
        }
        out
    }

    /// Check every step through the engine, failing at the first bad one.
    pub fn replay(&self, mode: ReplayMode) -> Result<Proof, TextError> {
        let mut proof = Proof::new(self.theorem.clone());
        let fail = |proof: &Proof, span: SourceSpan, cause: ReplayCause| TextError::Replay {
            step: proof.len() + 1,
            span,
            cause,
        };
        for item in &self.items {
            match item {
                ScriptItem::Step { span, step } => {
                    proof = proof
                        .apply_step(step.clone())
                        .map_err(|e| fail(&proof, *span, e.into()))?;
                }
                ScriptItem::Tactic {
                    span,
                    name,
                    goal,
                    steps: None,
                } => {
                    proof = tactics::apply_tactic(&proof, name, *goal)
                        .map_err(|e| fail(&proof, *span, e.into()))?;
                }
                ScriptItem::Tactic {
                    steps: Some(steps), ..
                } if mode == ReplayMode::Recorded => {
                    for (span, step) in steps {
                        proof = proof
                            .apply_step(step.clone())
                            .map_err(|e| fail(&proof, *span, e.into()))?;
                    }
                }
                ScriptItem::Tactic {
                    span,
                    name,
                    goal,
                    steps: Some(steps),
                } => {
                    proof = rerun_block(&proof, name, *goal, steps)
                        .map_err(|cause| fail(&proof, *span, cause))?;
                }
            }
        }
        Ok(proof)
    }
}

/// Re-run `name` until the recorded block is used up. Consecutive
/// invocations of one tactic on one goal are saved as a single block, so a
/// block may take several runs to cover.
fn rerun_block(
    proof: &Proof,
    name: &str,
    goal: usize,
    recorded: &[(SourceSpan, StepRecord)],
) -> Result<Proof, ReplayCause> {
    let info = tactics::lookup(name).ok_or_else(|| TacticError::Unknown(name.to_string()))?;
    let mut proof = proof.clone();
    let mut rest = recorded;
    loop {
        let run = info
            .tactic()
            .apply(goal, &TacticResult::start(proof.current().clone()))
            .ok_or_else(|| TacticError::Failed(name.to_string()))?;
        let n = run.applied.len();
        let matches = n <= rest.len()
            && run
                .applied
                .iter()
                .zip(rest)
                .all(|(a, (_, b))| a.kind == b.kind);
        if !matches || (n == 0 && !rest.is_empty()) {
            return Err(ReplayCause::Diverged(name.to_string()));
        }
        proof = proof
            .extend(run.applied.into_iter().map(|s| s.by(name)))
            .map_err(|(_, e)| e)?;
        rest = &rest[n..];
        if rest.is_empty() {
            return Ok(proof);
        }
    }
}

pub fn parse_script(text: &str) -> Result<ProofScript, TextError> {
    Parser::new(text)?.script()
}

/// Parse and replay a script.
pub fn load_script(text: &str, mode: ReplayMode) -> Result<Proof, TextError> {
    parse_script(text)?.replay(mode)
}

/// Group a proof's steps into script items: consecutive steps by the same
/// tactic on the same goal become one block.
pub fn script_from_proof(proof: &Proof, name: &str) -> ProofScript {
    let theorem = proof
        .initial()
        .subgoals()
        .first()
        .cloned()
        .expect("a saved proof starts from a theorem");
    let span = SourceSpan {
        start: 0,
        end: 0,
        line: 1,
        column: 1,
    };
    let mut items: Vec<ScriptItem> = Vec::new();
    for step in proof.steps() {
        let goal = match &step.kind {
            StepKind::Rule(app) => app.goal_index,
            StepKind::Discharge(i) => *i,
        };
        match (&step.provenance, items.last_mut()) {
            (
                Some(by),
                Some(ScriptItem::Tactic {
                    name,
                    goal: g,
                    steps: Some(steps),
                    ..
                }),
            ) if by == name && *g == goal => steps.push((span, step.clone())),
            (Some(by), _) => items.push(ScriptItem::Tactic {
                span,
                name: by.clone(),
                goal,
                steps: Some(vec![(span, step.clone())]),
            }),
            (None, _) => items.push(ScriptItem::Step {
                span,
                step: step.clone(),
            }),
        }
    }
    ProofScript {
        name: name.to_string(),
        theorem,
        items,
    }
}

pub fn print_script(script: &ProofScript) -> String {
    let mut out = format!(
        "theorem {} : {}\n",
        script.name,
        print_theorem(&script.theorem)
    );
    for item in &script.items {
        match item {
            ScriptItem::Step { step, .. } => {
                out.push_str(&print_step(step));
                out.push('\n');
            }
            ScriptItem::Tactic {
                name, goal, steps, ..
            } => {
                write!(out, "tactic {name} at {goal}").expect("string write");
                if let Some(steps) = steps {
                    out.push_str(" begin\n");
                    for (_, s) in steps {
                        writeln!(out, "  {}", print_step(s)).expect("string write");
                    }
                    out.push_str("end");
                }
                out.push('\n');
            }
        }
    }
    out
}

/// Serialize a proof as a script. Names that are not identifiers become `theorem`.
pub fn save_script(proof: &Proof, name: &str) -> String {
    let name = if is_identifier(name) { name } else { "theorem" };
    print_script(&script_from_proof(proof, name))
}
