//! Angle expressions used by pattern and diagram files.
//!
//! Grammar (radians only):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary | atom)*     // juxtaposition multiplies: 2pi
//! unary := '-' unary | '+' unary | atom
//! atom  := number | 'pi' | identifier | '(' expr ')'
//! ```
//!
//! Identifiers other than `pi` are variables bound at evaluation time, e.g.
//! `pi/2 - eps` or `s1*pi`.

use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

pub type Vars = BTreeMap<String, f64>;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum AngleError {
    #[error("angle syntax error at column {column}: {message}")]
    Syntax { column: usize, message: String },
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("angle evaluates to a non-finite value")]
    NonFinite,
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Num(f64),
    Var(String),
    Neg(Box<Node>),
    Bin(char, Box<Node>, Box<Node>),
}

/// A parsed angle expression that remembers its source text.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleExpr {
    source: String,
    tree: Node,
}

impl AngleExpr {
    pub fn parse(source: &str) -> Result<Self, AngleError> {
        let tokens = tokenize(source)?;
        let mut p = Parser { tokens: &tokens, pos: 0 };
        let tree = p.expr()?;
        if let Some(t) = p.peek() {
            return Err(AngleError::Syntax { column: t.col, message: format!("unexpected `{}`", t.text) });
        }
        Ok(Self { source: source.trim().to_string(), tree })
    }

    pub fn constant(value: f64) -> Self {
        Self { source: format!("{value}"), tree: Node::Num(value) }
    }

    pub fn source(&self) -> &str {
        &self.source
    }

    pub fn eval(&self, vars: &Vars) -> Result<f64, AngleError> {
        let v = eval(&self.tree, vars)?;
        if !v.is_finite() {
            return Err(AngleError::NonFinite);
        }
        Ok(v)
    }

    /// Names of the free variables.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        collect_vars(&self.tree, &mut out);
        out.sort();
        out.dedup();
        out
    }
}

impl fmt::Display for AngleExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.source)
    }
}

/// Parses and evaluates with no variables bound.
pub fn parse_angle(source: &str) -> Result<f64, AngleError> {
    AngleExpr::parse(source)?.eval(&Vars::new())
}

fn collect_vars(n: &Node, out: &mut Vec<String>) {
    match n {
        Node::Num(_) => {}
        Node::Var(v) if v == "pi" => {}
        Node::Var(v) => out.push(v.clone()),
        Node::Neg(a) => collect_vars(a, out),
        Node::Bin(_, a, b) => {
            collect_vars(a, out);
            collect_vars(b, out);
        }
    }
}

fn eval(n: &Node, vars: &Vars) -> Result<f64, AngleError> {
    Ok(match n {
        Node::Num(x) => *x,
        Node::Var(v) if v == "pi" => std::f64::consts::PI,
        Node::Var(v) => *vars.get(v).ok_or_else(|| AngleError::Unbound(v.clone()))?,
        Node::Neg(a) => -eval(a, vars)?,
        Node::Bin(op, a, b) => {
            let (x, y) = (eval(a, vars)?, eval(b, vars)?);
            match op {
                '+' => x + y,
                '-' => x - y,
                '*' => x * y,
                '/' => x / y,
                _ => unreachable!("parser only emits + - * /"),
            }
        }
    })
}

#[derive(Debug, Clone)]
struct Token {
    text: String,
    col: usize,
}

fn tokenize(src: &str) -> Result<Vec<Token>, AngleError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let ch = chars[i];
        let col = i + 1;
        if ch.is_whitespace() {
            i += 1;
        } else if "+-*/()".contains(ch) {
            out.push(Token { text: ch.to_string(), col });
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                i += 1;
            }
            // exponent part, e.g. 1e-3
            if i < chars.len() && (chars[i] == 'e' || chars[i] == 'E') {
                let mut j = i + 1;
                if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                    j += 1;
                }
                if j < chars.len() && chars[j].is_ascii_digit() {
                    i = j;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                }
            }
            out.push(Token { text: chars[start..i].iter().collect(), col });
        } else if ch.is_alphabetic() || ch == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Token { text: chars[start..i].iter().collect(), col });
        } else {
            return Err(AngleError::Syntax { column: col, message: format!("unexpected character `{ch}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn end_col(&self) -> usize {
        self.tokens.last().map(|t| t.col + t.text.len()).unwrap_or(1)
    }

    fn expr(&mut self) -> Result<Node, AngleError> {
        let mut lhs = self.term()?;
        while let Some(t) = self.peek() {
            let op = match t.text.as_str() {
                "+" => '+',
                "-" => '-',
                _ => break,
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Node, AngleError> {
        let mut lhs = self.unary()?;
        while let Some(t) = self.peek() {
            let (op, explicit) = match t.text.as_str() {
                "*" => ('*', true),
                "/" => ('/', true),
                "+" | "-" | ")" => break,
                _ => ('*', false),
            };
            if explicit {
                self.pos += 1;
            }
            let rhs = self.unary()?;
            lhs = Node::Bin(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Node, AngleError> {
        match self.peek().map(|t| t.text.as_str()) {
            Some("-") => {
                self.pos += 1;
                Ok(Node::Neg(Box::new(self.unary()?)))
            }
            Some("+") => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Node, AngleError> {
        let Some(t) = self.peek().cloned() else {
            return Err(AngleError::Syntax { column: self.end_col(), message: "expected a value".into() });
        };
        self.pos += 1;
        let first = t.text.chars().next().unwrap_or(' ');
        if t.text == "(" {
            let inner = self.expr()?;
            match self.peek() {
                Some(c) if c.text == ")" => {
                    self.pos += 1;
                    Ok(inner)
                }
                _ => Err(AngleError::Syntax { column: self.end_col(), message: "missing `)`".into() }),
            }
        } else if first.is_ascii_digit() || first == '.' {
            t.text
                .parse::<f64>()
                .map(Node::Num)
                .map_err(|_| AngleError::Syntax { column: t.col, message: format!("bad number `{}`", t.text) })
        } else if first.is_alphabetic() || first == '_' {
            Ok(Node::Var(t.text))
        } else {
            Err(AngleError::Syntax { column: t.col, message: format!("unexpected `{}`", t.text) })
        }
    }
}
