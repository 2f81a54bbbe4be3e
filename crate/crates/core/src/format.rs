//! The polynomial text format and JSON rendering.
//!
//! A univariate Laurent polynomial is a list of `[exponent, coefficient]`
//! pairs, `[[-3,1],[2,4]]` for `t^-3 + 4*t^2`. A multivariate one carries
//! exponent vectors, `[[[1,1],2]]` for `2*t1*t2`. A Witt vector is the list
//! of its components, `[[[-2,1]]]` for `(t^-2)` in `W_1`. Coefficients are
//! reduced mod `p`; repeated exponents are summed.

use serde_json::{json, Value};

use crate::algebra::{check_prime, LaurentPoly, MultiLaurentPoly, SFraction};
use crate::asw::{LogDifferential, LogRing, SwanCertificate};
use crate::{Error, Result};

#[derive(Debug)]
enum Node {
    Int(usize, i64),
    List(usize, Vec<Node>),
}

impl Node {
    fn pos(&self) -> usize {
        match self {
            Node::Int(p, _) | Node::List(p, _) => *p,
        }
    }

    fn int(&self, what: &str) -> Result<i64> {
        match self {
            Node::Int(_, v) => Ok(*v),
            Node::List(pos, _) => Err(perr(*pos, format!("expected {what}, found a list"))),
        }
    }

    fn exponent(&self) -> Result<i64> {
        match self {
            Node::Int(pos, v) if v.unsigned_abs() > MAX_EXPONENT as u64 => {
                Err(perr(*pos, format!("exponent {v} outside ±{MAX_EXPONENT}")))
            }
            Node::Int(_, v) => Ok(*v),
            Node::List(pos, _) => Err(perr(*pos, "expected an integer exponent, found a list")),
        }
    }

    fn list(&self, what: &str) -> Result<&[Node]> {
        match self {
            Node::List(_, items) => Ok(items),
            Node::Int(pos, _) => Err(perr(*pos, format!("expected {what}, found an integer"))),
        }
    }
}

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

/// Nested lists are bounded well above anything the format uses.
const MAX_DEPTH: usize = 16;

/// Largest accepted `|exponent|`; keeps Frobenius powers and products of
/// parsed polynomials far from `i64` overflow.
pub const MAX_EXPONENT: i64 = 1 << 20;

struct Reader<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn node(&mut self, depth: usize) -> Result<Node> {
        if depth > MAX_DEPTH {
            return Err(perr(self.pos, "nesting too deep"));
        }
        match self.peek() {
            Some(b'[') => {
                let start = self.pos;
                self.pos += 1;
                let mut items = Vec::new();
                if self.peek() == Some(b']') {
                    self.pos += 1;
                    return Ok(Node::List(start, items));
                }
                loop {
                    items.push(self.node(depth + 1)?);
                    match self.peek() {
                        Some(b',') => self.pos += 1,
                        Some(b']') => {
                            self.pos += 1;
                            return Ok(Node::List(start, items));
                        }
                        Some(c) => return Err(perr(self.pos, format!("expected ',' or ']', found '{}'", c as char))),
                        None => return Err(perr(self.pos, "unexpected end of input")),
                    }
                }
            }
            Some(c) if c == b'-' || c == b'+' || c.is_ascii_digit() => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                text.parse::<i64>()
                    .map(|v| Node::Int(start, v))
                    .map_err(|e| perr(start, format!("bad integer '{text}': {e}")))
            }
            Some(c) => Err(perr(self.pos, format!("unexpected character '{}'", c as char))),
            None => Err(perr(self.pos, "unexpected end of input")),
        }
    }
}

fn parse_tree(s: &str) -> Result<Node> {
    let mut r = Reader { src: s.as_bytes(), pos: 0 };
    let node = r.node(0)?;
    if r.peek().is_some() {
        return Err(perr(r.pos, "trailing input"));
    }
    Ok(node)
}

fn pair(node: &Node) -> Result<(&Node, i64)> {
    match node.list("an [exponent, coefficient] pair")? {
        [e, c] => Ok((e, c.int("an integer coefficient")?)),
        _ => Err(perr(node.pos(), "a term must have exactly two entries")),
    }
}

fn laurent_from(p: u32, node: &Node) -> Result<LaurentPoly> {
    let terms = node
        .list("a list of terms")?
        .iter()
        .map(|t| pair(t).and_then(|(e, c)| Ok((e.exponent()?, c))))
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentPoly::from_terms(p, terms))
}

fn multi_from(p: u32, nvars: Option<usize>, node: &Node) -> Result<MultiLaurentPoly> {
    let mut arity = nvars;
    let mut terms = Vec::new();
    for t in node.list("a list of terms")? {
        let (e, c) = pair(t)?;
        let exps = e
            .list("an exponent vector")?
            .iter()
            .map(Node::exponent)
            .collect::<Result<Vec<_>>>()?;
        match arity {
            None => arity = Some(exps.len()),
            Some(n) if n != exps.len() => {
                return Err(perr(e.pos(), format!("exponent vector has {} entries, expected {n}", exps.len())))
            }
            _ => {}
        }
        terms.push((exps, c));
    }
    let n = arity.ok_or_else(|| perr(node.pos(), "cannot infer the number of variables of an empty polynomial"))?;
    if n == 0 {
        return Err(perr(node.pos(), "exponent vectors must be nonempty"));
    }
    MultiLaurentPoly::from_terms(p, n, terms)
}

pub fn parse_laurent(p: u32, s: &str) -> Result<LaurentPoly> {
    check_prime(p)?;
    laurent_from(p, &parse_tree(s)?)
}

/// Parses a multivariate polynomial; the arity is inferred from the first
/// term when `nvars` is `None`.
pub fn parse_multi(p: u32, nvars: Option<usize>, s: &str) -> Result<MultiLaurentPoly> {
    check_prime(p)?;
    multi_from(p, nvars, &parse_tree(s)?)
}

/// Parses the components of a Witt vector over `F_p[t, t^-1]`.
pub fn parse_witt(p: u32, s: &str) -> Result<Vec<LaurentPoly>> {
    check_prime(p)?;
    let tree = parse_tree(s)?;
    let comps = tree.list("a list of Witt components")?;
    if comps.is_empty() {
        return Err(perr(tree.pos(), "a Witt vector needs at least one component"));
    }
    comps.iter().map(|c| laurent_from(p, c)).collect()
}

pub fn laurent_to_text(f: &LaurentPoly) -> String {
    let terms: Vec<String> = f.terms().map(|(e, c)| format!("[{e},{c}]")).collect();
    format!("[{}]", terms.join(","))
}

pub fn multi_to_text(f: &MultiLaurentPoly) -> String {
    let terms: Vec<String> = f
        .terms()
        .map(|(e, c)| {
            let exps: Vec<String> = e.iter().map(i64::to_string).collect();
            format!("[[{}],{c}]", exps.join(","))
        })
        .collect();
    format!("[{}]", terms.join(","))
}

pub fn witt_to_text(comps: &[LaurentPoly]) -> String {
    let parts: Vec<String> = comps.iter().map(laurent_to_text).collect();
    format!("[{}]", parts.join(","))
}

/// Human-readable rendering of chart elements.
pub trait Render {
    fn render(&self) -> String;
}

impl Render for LaurentPoly {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Render for MultiLaurentPoly {
    fn render(&self) -> String {
        let names = if self.nvars() == 2 {
            vec!["x".to_string(), "y".to_string()]
        } else {
            MultiLaurentPoly::default_names("t", self.nvars())
        };
        let text = self.display_with(&names).to_string();
        text
    }
}

impl Render for SFraction {
    fn render(&self) -> String {
        self.to_string()
    }
}

pub fn render_form<R: LogRing + Render>(omega: &LogDifferential<R>) -> String {
    let parts: Vec<String> = omega
        .coeffs()
        .iter()
        .zip(omega.basis().names())
        .filter(|(c, _)| !c.is_zero())
        .map(|(c, b)| format!("({})·{b}", c.render()))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// `{"basis": .., "coeffs": [..], "v_log": ..}` for a log differential.
pub fn form_json<R: LogRing + Render>(omega: &LogDifferential<R>) -> Value {
    let coeffs: Vec<Value> = omega
        .coeffs()
        .iter()
        .zip(omega.basis().names())
        .map(|(c, b)| json!({"basis": b, "coeff": c.render()}))
        .collect();
    json!({"coeffs": coeffs, "v_log": omega.v_log(), "text": render_form(omega)})
}

/// Stable JSON for a Swan certificate.
pub fn certificate_json<R: LogRing + Render>(cert: &SwanCertificate<R>) -> Value {
    let reduced: Vec<String> = cert.reduced.components().iter().map(Render::render).collect();
    json!({
        "n": cert.n,
        "certified": cert.certified,
        "bounds": [cert.bounds.0, cert.bounds.1],
        "reduced": reduced,
        "witness": form_json(&cert.witness),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;

    #[test]
    fn univariate_example() {
        let f = parse_laurent(5, "[[-3,1],[2,4]]").unwrap();
        assert_eq!(f.to_string(), "t^-3 + 4*t^2");
        assert_eq!(laurent_to_text(&f), "[[-3,1],[2,4]]");
        let g = parse_laurent(5, " [ [2, -1] , [2, 3], [0, 5] ] ").unwrap();
        assert_eq!(g, LaurentPoly::monomial(5, 2, 2));
        assert!(parse_laurent(5, "[]").unwrap().is_zero());
    }

    #[test]
    fn multivariate_example() {
        let f = parse_multi(3, None, "[[[1,1],2]]").unwrap();
        assert_eq!(f.nvars(), 2);
        assert_eq!(multi_to_text(&f), "[[[1,1],2]]");
        assert!(parse_multi(3, Some(3), "[[[1,1],2]]").is_err());
        assert!(parse_multi(3, None, "[]").is_err());
        assert!(parse_multi(3, Some(2), "[]").unwrap().is_zero());
    }

    #[test]
    fn witt_payload() {
        let w = parse_witt(2, "[[[-2,1]]]").unwrap();
        assert_eq!(w, vec![LaurentPoly::monomial(2, -2, 1)]);
        assert_eq!(witt_to_text(&w), "[[[-2,1]]]");
        assert!(parse_witt(2, "[]").is_err());
    }

    #[test]
    fn errors_carry_positions() {
        let pos = |s: &str| match parse_laurent(3, s) {
            Err(Error::Parse { pos, .. }) => pos,
            other => panic!("expected a parse error, got {other:?}"),
        };
        assert_eq!(pos("[[1,2],[3]]"), 7);
        assert_eq!(pos("[[1,2] x"), 7);
        assert_eq!(pos("[[1,2]] 5"), 8);
        assert_eq!(pos("[[1,99999999999999999999]]"), 4);
        assert_eq!(pos("[[[1],2]]"), 2);
        assert_eq!(pos("[[0,1],[-2000000,1]]"), 8);
        assert_eq!(pos("[[-9223372036854775808,1]]"), 2);
        assert_eq!(pos(""), 0);
        assert!(matches!(parse_laurent(4, "[]"), Err(Error::UnsupportedPrime(4))));
    }

    #[test]
    fn deep_nesting_is_rejected() {
        let s = "[".repeat(100) + &"]".repeat(100);
        assert!(parse_laurent(2, &s).is_err());
    }
}
