//! Presentation DSL.
//!
//! ```text
//! gens x y;
//! rel x*y - y*x;
//! central f = x^2 + y^2;
//! ```
//!
//! Statements end in `;` and may come in any order after `gens`. Relations and
//! the central element are Gaussian-rational combinations of degree-2 words
//! (`x*y`, `x^2`); `rel lhs = rhs;` means `lhs − rhs`. `grading z2;` allows
//! constant terms in relations, for Clifford-style inputs such as
//! `rel x^2 - 1;`. `witness u, v;` adds one pair of linear forms to a rank
//! witness. `#` starts a comment.

use std::fmt;

use num_traits::Zero;
use quadric_core::config::Config;
use quadric_core::hypersurface::QuadricInput;
use quadric_core::presentation::{format_terms, CentralElement, QuadraticPresentation, Relation};
use quadric_core::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at line {}, column {}", self.message, self.line, self.column)
    }
}

impl std::error::Error for ParseError {}

/// A parsed DSL file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Source {
    pub generators: Vec<String>,
    pub relations: Vec<Relation>,
    pub central: Option<CentralElement>,
    pub z2: bool,
    pub witness: Vec<(Vec<Scalar>, Vec<Scalar>)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Pos {
    line: usize,
    column: usize,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(Scalar),
    Paren(String),
    Sym(char),
}

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl<'a> Lexer<'a> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.column = 1;
        } else {
            self.pos.column += 1;
        }
        Some(c)
    }

    fn tokens(mut self) -> Result<Vec<(Tok, Pos)>, ParseError> {
        let mut out = Vec::new();
        while let Some(&c) = self.chars.peek() {
            let start = self.pos;
            match c {
                c if c.is_whitespace() => {
                    self.bump();
                }
                '#' => {
                    while self.chars.peek().is_some_and(|&c| c != '\n') {
                        self.bump();
                    }
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let mut s = String::new();
                    while let Some(&c) = self.chars.peek() {
                        if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                            s.push(c);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    out.push((Tok::Ident(s), start));
                }
                c if c.is_ascii_digit() => {
                    let mut s = String::new();
                    while let Some(&c) = self.chars.peek() {
                        if c.is_ascii_digit() || c == '/' {
                            s.push(c);
                            self.bump();
                        } else {
                            break;
                        }
                    }
                    // imaginary suffix, unless it starts an identifier
                    if self.chars.peek() == Some(&'i') {
                        let mut ahead = self.chars.clone();
                        ahead.next();
                        if !ahead.peek().is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                            s.push('i');
                            self.bump();
                        }
                    }
                    let value = s.parse::<Scalar>().map_err(|_| error(start, format!("bad number `{s}`")))?;
                    out.push((Tok::Num(value), start));
                }
                '(' => {
                    self.bump();
                    let mut s = String::new();
                    loop {
                        match self.bump() {
                            Some(')') => break,
                            Some(c) => s.push(c),
                            None => return Err(error(start, "unclosed `(`".into())),
                        }
                    }
                    out.push((Tok::Paren(s), start));
                }
                '+' | '-' | '*' | '^' | '=' | ';' | ',' => {
                    self.bump();
                    out.push((Tok::Sym(c), start));
                }
                _ => return Err(error(start, format!("unexpected character `{c}`"))),
            }
        }
        Ok(out)
    }
}

fn error(pos: Pos, message: String) -> ParseError {
    ParseError {
        line: pos.line,
        column: pos.column,
        message,
    }
}

/// One term `c · word` with generator indices.
struct Term {
    coef: Scalar,
    word: Vec<usize>,
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
    end: Pos,
    generators: Vec<String>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Allowed {
    Quadratic,
    QuadraticOrConstant,
    Linear,
}

impl Allowed {
    fn admits(self, degree: usize) -> bool {
        match self {
            Allowed::Quadratic => degree == 2,
            Allowed::QuadraticOrConstant => degree == 2 || degree == 0,
            Allowed::Linear => degree == 1,
        }
    }
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(t, _)| t)
    }

    fn pos(&self) -> Pos {
        self.toks.get(self.at).map(|(_, p)| *p).unwrap_or(self.end)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(t, _)| t.clone());
        self.at += 1;
        t
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::Sym(s)) if s == c => Ok(()),
            Some(t) => Err(error(pos, format!("expected `{c}`, found {}", describe(&t)))),
            None => Err(error(pos, format!("expected `{c}`, found end of input"))),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn factor(&mut self, term: &mut Term) -> Result<(), ParseError> {
        let pos = self.pos();
        match self.next() {
            Some(Tok::Num(s)) => term.coef = &term.coef * &s,
            Some(Tok::Paren(text)) => {
                let s = text
                    .parse::<Scalar>()
                    .map_err(|_| error(pos, format!("bad scalar `({text})`")))?;
                term.coef = &term.coef * &s;
            }
            Some(Tok::Ident(name)) => match self.generators.iter().position(|g| *g == name) {
                Some(g) => {
                    let mut power = 1;
                    if self.eat('^') {
                        let p = self.pos();
                        power = match self.next() {
                            Some(Tok::Num(n)) => n
                                .as_gaussian_integer()
                                .filter(|(_, im)| im.is_zero())
                                .and_then(|(re, _)| usize::try_from(re).ok())
                                .ok_or_else(|| error(p, "exponent must be a natural number".into()))?,
                            _ => return Err(error(p, "expected an exponent after `^`".into())),
                        };
                    }
                    term.word.extend(std::iter::repeat_n(g, power));
                }
                None if name == "i" => term.coef = &term.coef * &Scalar::i(),
                None => return Err(error(pos, format!("unknown generator `{name}`"))),
            },
            Some(t) => return Err(error(pos, format!("expected a term, found {}", describe(&t)))),
            None => return Err(error(pos, "expected a term, found end of input".into())),
        }
        Ok(())
    }

    fn term(&mut self, sign: Scalar, allowed: Allowed, what: &str) -> Result<Term, ParseError> {
        let pos = self.pos();
        let mut term = Term { coef: sign, word: Vec::new() };
        while self.eat('-') {
            term.coef = -term.coef;
        }
        self.factor(&mut term)?;
        while self.eat('*') {
            self.factor(&mut term)?;
        }
        if !term.coef.is_zero() && !allowed.admits(term.word.len()) {
            return Err(error(pos, format!("{what} degree {}", term.word.len())));
        }
        Ok(term)
    }

    /// Sum of terms, stopping before `;`, `,` or `=`.
    fn expr(&mut self, allowed: Allowed, what: &str) -> Result<Vec<Term>, ParseError> {
        let mut terms = Vec::new();
        let mut sign = Scalar::from(1);
        if self.eat('-') {
            sign = Scalar::from(-1);
        } else {
            self.eat('+');
        }
        loop {
            terms.push(self.term(sign, allowed, what)?);
            if self.eat('+') {
                sign = Scalar::from(1);
            } else if self.eat('-') {
                sign = Scalar::from(-1);
            } else {
                return Ok(terms);
            }
        }
    }

    /// Quadratic part in `V⊗V` coordinates and constant part.
    fn collect(&self, terms: &[Term]) -> (Vec<Scalar>, Scalar) {
        let n = self.generators.len();
        let mut quad = vec![Scalar::zero(); n * n];
        let mut constant = Scalar::zero();
        for t in terms {
            match t.word.as_slice() {
                [a, b] => quad[a * n + b] += &t.coef,
                [] => constant += &t.coef,
                _ => {}
            }
        }
        (quad, constant)
    }

    fn linear(&self, terms: &[Term]) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.generators.len()];
        for t in terms {
            if let [a] = t.word.as_slice() {
                v[*a] += &t.coef;
            }
        }
        v
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Num(s) => format!("`{s}`"),
        Tok::Paren(s) => format!("`({s})`"),
        Tok::Sym(c) => format!("`{c}`"),
    }
}

pub fn parse(text: &str) -> Result<Source, ParseError> {
    let lexer = Lexer {
        chars: text.chars().peekable(),
        pos: Pos { line: 1, column: 1 },
    };
    let end = {
        let line = text.lines().count().max(1);
        let column = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
        Pos { line, column }
    };
    let toks = lexer.tokens()?;
    let mut p = Parser {
        toks,
        at: 0,
        end,
        generators: Vec::new(),
    };
    let mut src = Source {
        generators: Vec::new(),
        relations: Vec::new(),
        central: None,
        z2: false,
        witness: Vec::new(),
    };
    let mut seen_gens = false;
    while p.peek().is_some() {
        let pos = p.pos();
        let keyword = match p.next() {
            Some(Tok::Ident(k)) => k,
            Some(t) => return Err(error(pos, format!("expected a statement, found {}", describe(&t)))),
            None => unreachable!(),
        };
        if keyword != "gens" && !seen_gens {
            return Err(error(pos, "`gens` must come first".into()));
        }
        match keyword.as_str() {
            "gens" => {
                if seen_gens {
                    return Err(error(pos, "`gens` given twice".into()));
                }
                seen_gens = true;
                while let Some(Tok::Ident(_)) = p.peek() {
                    let gp = p.pos();
                    let Some(Tok::Ident(name)) = p.next() else { unreachable!() };
                    if name == "i" {
                        return Err(error(gp, "`i` is the imaginary unit, not a generator name".into()));
                    }
                    if p.generators.contains(&name) {
                        return Err(error(gp, format!("duplicate generator `{name}`")));
                    }
                    p.generators.push(name);
                }
                if p.generators.len() > 255 {
                    return Err(error(pos, "too many generators".into()));
                }
                p.expect(';')?;
            }
            "grading" => {
                let gp = p.pos();
                match p.next() {
                    Some(Tok::Ident(g)) if g == "z2" => src.z2 = true,
                    _ => return Err(error(gp, "expected `z2`".into())),
                }
                p.expect(';')?;
            }
            "rel" => {
                let allowed = if src.z2 { Allowed::QuadraticOrConstant } else { Allowed::Quadratic };
                let mut terms = p.expr(allowed, "relation")?;
                if p.eat('=') {
                    for mut t in p.expr(allowed, "relation")? {
                        t.coef = -t.coef;
                        terms.push(t);
                    }
                }
                p.expect(';')?;
                let (quadratic, constant) = p.collect(&terms);
                // `q + c = 0` imposes `q = −c`
                src.relations.push(Relation {
                    quadratic,
                    constant: -constant,
                });
            }
            "central" => {
                if src.central.is_some() {
                    return Err(error(pos, "central element given twice".into()));
                }
                let name = match (p.toks.get(p.at), p.toks.get(p.at + 1)) {
                    (Some((Tok::Ident(n), _)), Some((Tok::Sym('='), _))) if !p.generators.contains(n) => {
                        let n = n.clone();
                        p.at += 2;
                        n
                    }
                    _ => "f".to_string(),
                };
                let terms = p.expr(Allowed::Quadratic, "central element")?;
                p.expect(';')?;
                src.central = Some(CentralElement::new(name, p.collect(&terms).0));
            }
            "witness" => {
                let u = p.expr(Allowed::Linear, "witness")?;
                p.expect(',')?;
                let v = p.expr(Allowed::Linear, "witness")?;
                p.expect(';')?;
                src.witness.push((p.linear(&u), p.linear(&v)));
            }
            other => return Err(error(pos, format!("unknown statement `{other}`"))),
        }
    }
    if !seen_gens {
        return Err(error(p.pos(), "missing `gens` statement".into()));
    }
    src.generators = p.generators;
    Ok(src)
}

impl Source {
    pub fn presentation(&self) -> quadric_core::Result<QuadraticPresentation> {
        QuadraticPresentation::new(self.generators.clone(), self.relations.clone())
    }

    /// The quadric `A/(f)`; needs an ungraded input with a central element.
    pub fn quadric(&self, provenance: &str, cfg: &Config) -> anyhow::Result<QuadricInput> {
        if self.z2 {
            anyhow::bail!("input declares `grading z2`; it is an algebra, not a quadric");
        }
        let f = self
            .central
            .clone()
            .ok_or_else(|| anyhow::anyhow!("input has no `central` statement"))?;
        Ok(QuadricInput::new(self.presentation()?, f, provenance, cfg)?)
    }

    pub fn from_quadric(q: &QuadricInput) -> Source {
        Source {
            generators: q.generators().to_vec(),
            relations: q.algebra.display_relations().to_vec(),
            central: Some(q.f.clone()),
            z2: false,
            witness: Vec::new(),
        }
    }
}

pub(crate) fn format_linear(names: &[String], v: &[Scalar]) -> String {
    let terms: Vec<(Scalar, String)> = v
        .iter()
        .zip(names)
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, g)| (c.clone(), g.clone()))
        .collect();
    format_terms(&terms)
}

/// Canonical text; `parse(&s.to_string())` gives back `s`.
impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gens {};", self.generators.join(" "))?;
        if self.z2 {
            writeln!(f, "grading z2;")?;
        }
        let names = &self.generators;
        let n = names.len();
        for r in &self.relations {
            let mut terms = Vec::new();
            for i in 0..n {
                for j in 0..n {
                    let c = &r.quadratic[i * n + j];
                    if !c.is_zero() {
                        let word = if i == j {
                            format!("{}^2", names[i])
                        } else {
                            format!("{}*{}", names[i], names[j])
                        };
                        terms.push((c.clone(), word));
                    }
                }
            }
            if !r.constant.is_zero() {
                terms.push((-&r.constant, String::new()));
            }
            writeln!(f, "rel {};", format_terms(&terms))?;
        }
        if let Some(c) = &self.central {
            writeln!(f, "central {} = {};", c.name, quadric_core::presentation::format_quadratic(names, &c.lift))?;
        }
        for (u, v) in &self.witness {
            writeln!(f, "witness {}, {};", format_linear(names, u), format_linear(names, v))?;
        }
        Ok(())
    }
}
