//! Operator expressions: parser, printer and lowering to [`DiffOperator`].
//!
//! ```text
//! expr    := ["-"] term (("+" | "-") term)*
//! term    := factor ("*" factor)*
//! factor  := "D" | "d1" | "d2" | "d3" | "R1" | "R2" | "R3"
//!          | "L[" quat "]" | "M[" quat "]" | complex | "(" expr ")"
//! quat    := "[" complex "," complex "," complex "," complex "]"
//!          | complex "," complex "," complex "," complex
//! complex := real | real "j" | real ("+" | "-") real "j"
//! real    := digits ["." digits] ["/" digits ["." digits]]
//! ```
//!
//! A two-part complex factor must be written without spaces (`2+3j`);
//! `2 + 3j` is a sum of two factors. Inside quaternion brackets components
//! may carry a sign and spaces.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::literal::{parse_complex_parts, parse_unsigned_real};
use crate::matrix::Matrix4;
use crate::operator::{moisil_theodoresco, DiffOperator};
use crate::quaternion::{lift_left, lift_right, Quaternion};
use crate::scalar::{rational_literal, Scalar};

/// A complex number with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexLit {
    pub re: BigRational,
    pub im: BigRational,
}

impl ComplexLit {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        ComplexLit { re, im }
    }

    pub fn from_scalar<S: Scalar>(s: &S) -> Result<Self> {
        let (re, im) = s
            .to_rationals()
            .ok_or_else(|| Error::Literal(format!("non-finite scalar {}", s.to_literal())))?;
        Ok(ComplexLit { re, im })
    }

    pub fn to_scalar<S: Scalar>(&self) -> S {
        S::from_rationals(&self.re, &self.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re == BigRational::from_integer(1.into())
    }

    /// Leading part negative, so the factor must be printed as a negation.
    fn leads_negative(&self) -> bool {
        if self.re.is_zero() {
            self.im.is_negative()
        } else {
            self.re.is_negative()
        }
    }

    fn negated(&self) -> Self {
        ComplexLit {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl fmt::Display for ComplexLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let re = rational_literal(&self.re);
        let im = rational_literal(&self.im);
        if self.im.is_zero() {
            f.write_str(&re)
        } else if self.re.is_zero() {
            write!(f, "{im}j")
        } else if self.im.is_negative() {
            write!(f, "{re}-{}j", rational_literal(&-self.im.clone()))
        } else {
            write!(f, "{re}+{im}j")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Atom {
    /// The Moisil–Theodoresco operator.
    D,
    /// `d1..d3`
    Partial(usize),
    /// `R1..R3`
    Reflect(usize),
    Left([ComplexLit; 4]),
    Right([ComplexLit; 4]),
    Scalar(ComplexLit),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OperatorExpr {
    Sum(Vec<OperatorExpr>),
    Product(Vec<OperatorExpr>),
    Negate(Box<OperatorExpr>),
    Atom(Atom),
}

impl OperatorExpr {
    /// A scalar factor; negative leading parts become an explicit negation so
    /// the printed form parses back to the same tree.
    pub fn scalar(c: ComplexLit) -> Self {
        if c.leads_negative() {
            OperatorExpr::Negate(Box::new(OperatorExpr::Atom(Atom::Scalar(c.negated()))))
        } else {
            OperatorExpr::Atom(Atom::Scalar(c))
        }
    }

    fn sum(mut items: Vec<OperatorExpr>) -> Self {
        if items.len() == 1 {
            items.pop().expect("one item")
        } else {
            OperatorExpr::Sum(items)
        }
    }

    fn product(mut items: Vec<OperatorExpr>) -> Self {
        if items.len() == 1 {
            items.pop().expect("one item")
        } else {
            OperatorExpr::Product(items)
        }
    }
}

pub fn parse_expr(src: &str) -> Result<OperatorExpr> {
    let mut p = Parser { src, pos: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(e)
}

/// Parses and lowers in one step.
pub fn parse_operator<S: Scalar>(src: &str) -> Result<DiffOperator<S>> {
    lower(&parse_expr(src)?)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{c}`")))
        }
    }

    fn expr(&mut self) -> Result<OperatorExpr> {
        let mut items = Vec::new();
        let first = if self.eat('-') {
            OperatorExpr::Negate(Box::new(self.term()?))
        } else {
            self.term()?
        };
        items.push(first);
        loop {
            if self.eat('+') {
                items.push(self.term()?);
            } else if self.eat('-') {
                items.push(OperatorExpr::Negate(Box::new(self.term()?)));
            } else {
                break;
            }
        }
        Ok(OperatorExpr::sum(items))
    }

    fn term(&mut self) -> Result<OperatorExpr> {
        let mut items = vec![self.factor()?];
        while self.eat('*') {
            items.push(self.factor()?);
        }
        Ok(OperatorExpr::product(items))
    }

    fn factor(&mut self) -> Result<OperatorExpr> {
        self.skip_ws();
        let start = self.pos;
        let Some(c) = self.peek() else {
            return Err(self.error("unexpected end of input"));
        };
        if c == '(' {
            self.pos += 1;
            let e = self.expr()?;
            self.expect(')')?;
            return Ok(e);
        }
        if c.is_ascii_digit() || c == '.' {
            return self
                .complex_factor()
                .map(|z| OperatorExpr::Atom(Atom::Scalar(z)));
        }
        let word: String = self
            .rest()
            .chars()
            .take_while(|c| c.is_ascii_alphanumeric())
            .collect();
        self.pos += word.len();
        let axis = |s: &str| s[1..].parse::<usize>().ok().filter(|k| (1..=3).contains(k));
        let atom = match word.as_str() {
            "D" => Atom::D,
            "L" => Atom::Left(self.quaternion()?),
            "M" => Atom::Right(self.quaternion()?),
            w if w.len() == 2 && w.starts_with('d') && axis(w).is_some() => {
                Atom::Partial(axis(w).unwrap())
            }
            w if w.len() == 2 && w.starts_with('R') && axis(w).is_some() => {
                Atom::Reflect(axis(w).unwrap())
            }
            "" => {
                self.pos = start;
                return Err(self.error(format!("unexpected character `{c}`")));
            }
            w => {
                self.pos = start;
                return Err(self.error(format!("unknown atom `{w}`")));
            }
        };
        Ok(OperatorExpr::Atom(atom))
    }

    fn real_token(&mut self) -> Option<BigRational> {
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_digit() || c == '.' || c == '/'))
            .unwrap_or(self.rest().len());
        let tok = &self.rest()[..len];
        let v = parse_unsigned_real(tok)?;
        self.pos += len;
        Some(v)
    }

    fn complex_factor(&mut self) -> Result<ComplexLit> {
        let start = self.pos;
        let re = self
            .real_token()
            .ok_or_else(|| self.error("malformed number"))?;
        if self.peek() == Some('j') {
            self.pos += 1;
            return Ok(ComplexLit::new(BigRational::zero(), re));
        }
        // Tight `a+bj` / `a-bj`.
        if let Some(sign @ ('+' | '-')) = self.peek() {
            let save = self.pos;
            self.pos += 1;
            if let Some(im) = self.real_token() {
                if self.peek() == Some('j') {
                    self.pos += 1;
                    let im = if sign == '-' { -im } else { im };
                    return Ok(ComplexLit::new(re, im));
                }
            }
            self.pos = save;
        }
        debug_assert!(self.pos > start);
        Ok(ComplexLit::new(re, BigRational::zero()))
    }

    fn quaternion(&mut self) -> Result<[ComplexLit; 4]> {
        self.expect('[')?;
        let double = self.eat('[');
        let mut parts = Vec::with_capacity(4);
        for i in 0..4 {
            self.skip_ws();
            let len = self.rest().find([',', ']']).unwrap_or(self.rest().len());
            let text = &self.rest()[..len];
            let (re, im) = parse_complex_parts(text).map_err(|e| self.error(e.to_string()))?;
            self.pos += len;
            parts.push(ComplexLit::new(re, im));
            if i < 3 {
                self.expect(',')?;
            }
        }
        self.expect(']')?;
        if double {
            self.expect(']')?;
        }
        Ok(parts.try_into().expect("four components"))
    }
}

fn quaternion_text(q: &[ComplexLit; 4]) -> String {
    let parts: Vec<String> = q.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(", "))
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::D => f.write_str("D"),
            Atom::Partial(k) => write!(f, "d{k}"),
            Atom::Reflect(k) => write!(f, "R{k}"),
            Atom::Left(q) => write!(f, "L{}", quaternion_text(q)),
            Atom::Right(q) => write!(f, "M{}", quaternion_text(q)),
            Atom::Scalar(z) => write!(f, "{z}"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum Level {
    Expr,
    Term,
    Factor,
}

fn write_expr(e: &OperatorExpr, level: Level, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let needs_parens = match e {
        OperatorExpr::Sum(_) | OperatorExpr::Negate(_) => level > Level::Expr,
        OperatorExpr::Product(_) => level > Level::Term,
        OperatorExpr::Atom(Atom::Scalar(z)) => z.leads_negative() && level > Level::Expr,
        OperatorExpr::Atom(_) => false,
    };
    if needs_parens {
        f.write_str("(")?;
        write_expr(e, Level::Expr, f)?;
        return f.write_str(")");
    }
    match e {
        OperatorExpr::Sum(items) => {
            for (i, item) in items.iter().enumerate() {
                match (i, item) {
                    (0, OperatorExpr::Negate(inner)) => {
                        f.write_str("-")?;
                        write_expr(inner, Level::Term, f)?;
                    }
                    (0, other) => write_expr(other, Level::Term, f)?,
                    (_, OperatorExpr::Negate(inner)) => {
                        f.write_str(" - ")?;
                        write_expr(inner, Level::Term, f)?;
                    }
                    (_, other) => {
                        f.write_str(" + ")?;
                        write_expr(other, Level::Term, f)?;
                    }
                }
            }
            Ok(())
        }
        OperatorExpr::Negate(inner) => {
            f.write_str("-")?;
            write_expr(inner, Level::Term, f)
        }
        OperatorExpr::Product(items) => {
            for (i, item) in items.iter().enumerate() {
                if i > 0 {
                    f.write_str("*")?;
                }
                write_expr(item, Level::Factor, f)?;
            }
            Ok(())
        }
        OperatorExpr::Atom(a) => write!(f, "{a}"),
    }
}

impl fmt::Display for OperatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_expr(self, Level::Expr, f)
    }
}

fn quaternion_of<S: Scalar>(q: &[ComplexLit; 4]) -> Quaternion<S> {
    Quaternion::from_coords(std::array::from_fn(|i| q[i].to_scalar()))
}

/// Lowers an expression; `*` composes left to right, so `A*B` applies `B` first.
pub fn lower<S: Scalar>(e: &OperatorExpr) -> Result<DiffOperator<S>> {
    Ok(match e {
        OperatorExpr::Sum(items) => {
            let mut acc = DiffOperator::zero();
            for item in items {
                acc = acc + lower(item)?;
            }
            acc
        }
        OperatorExpr::Product(items) => {
            let mut acc = DiffOperator::identity();
            for item in items {
                acc = &acc * &lower(item)?;
            }
            acc
        }
        OperatorExpr::Negate(inner) => -lower(inner)?,
        OperatorExpr::Atom(a) => match a {
            Atom::D => moisil_theodoresco(),
            Atom::Partial(k) => DiffOperator::partial(*k)?,
            Atom::Reflect(k) => DiffOperator::reflect(*k)?,
            Atom::Left(q) => DiffOperator::const_left(&quaternion_of(q)),
            Atom::Right(q) => DiffOperator::const_right(&quaternion_of(q)),
            Atom::Scalar(z) => DiffOperator::scalar(z.to_scalar()),
        },
    })
}

/// Writes a matrix as `Σ_b L[q_b]·M[i_b]`, using that the sixteen products
/// `L[i_a]M[i_b]` are signed permutation matrices, orthogonal under the trace
/// pairing with norm 4.
pub fn matrix_to_expr<S: Scalar>(m: &Matrix4<S>) -> Result<Vec<OperatorExpr>> {
    let quarter = S::from_ratio(1, 4);
    let mut out = Vec::new();
    for b in 0..4 {
        let rb = lift_right(&Quaternion::<S>::unit(b));
        let mut coords: [S; 4] = std::array::from_fn(|_| S::zero());
        for (a, coord) in coords.iter_mut().enumerate() {
            let basis = &lift_left(&Quaternion::<S>::unit(a)) * &rb;
            *coord = (&basis.transpose() * m).trace() * quarter.clone();
        }
        if coords.iter().all(S::is_zero) {
            continue;
        }
        let lits = coords
            .iter()
            .map(ComplexLit::from_scalar)
            .collect::<Result<Vec<_>>>()?;
        let nonzero: Vec<usize> = (0..4).filter(|&a| !lits[a].is_zero()).collect();
        let mut factors = Vec::new();
        let mut negate = false;
        if nonzero == [0] {
            let mut c = lits[0].clone();
            if c.leads_negative() {
                negate = true;
                c = c.negated();
            }
            if !c.is_one() || b == 0 {
                factors.push(OperatorExpr::Atom(Atom::Scalar(c)));
            }
        } else {
            factors.push(OperatorExpr::Atom(Atom::Left(
                lits.try_into().expect("four"),
            )));
        }
        if b > 0 {
            let unit: [ComplexLit; 4] = std::array::from_fn(|i| {
                ComplexLit::new(
                    BigRational::from_integer(BigInt::from(i32::from(i == b))),
                    BigRational::zero(),
                )
            });
            factors.push(OperatorExpr::Atom(Atom::Right(unit)));
        }
        let product = OperatorExpr::product(factors);
        out.push(if negate {
            OperatorExpr::Negate(Box::new(product))
        } else {
            product
        });
    }
    Ok(out)
}

/// `lead * tail`, keeping a leading negation outermost and dropping a unit factor.
fn times(lead: OperatorExpr, tail: Vec<OperatorExpr>) -> OperatorExpr {
    match lead {
        OperatorExpr::Negate(inner) => OperatorExpr::Negate(Box::new(times(*inner, tail))),
        OperatorExpr::Product(mut v) => {
            v.extend(tail);
            OperatorExpr::Product(v)
        }
        OperatorExpr::Atom(Atom::Scalar(c)) if c.is_one() => OperatorExpr::product(tail),
        other => {
            let mut v = vec![other];
            v.extend(tail);
            OperatorExpr::product(v)
        }
    }
}

/// Expression whose lowering reproduces `op` exactly (up to float rounding
/// of the coefficient decomposition in float mode).
pub fn operator_to_expr<S: Scalar>(op: &DiffOperator<S>) -> Result<OperatorExpr> {
    let mut terms = Vec::new();
    for (mono, c) in op.terms() {
        let coeff = matrix_to_expr(c)?;
        if coeff.is_empty() {
            continue;
        }
        let mut tail = Vec::new();
        for (k, &n) in mono.degree.iter().enumerate() {
            for _ in 0..n {
                tail.push(OperatorExpr::Atom(Atom::Partial(k + 1)));
            }
        }
        for k in mono.mask.axes() {
            tail.push(OperatorExpr::Atom(Atom::Reflect(k)));
        }
        if tail.is_empty() {
            terms.extend(coeff);
        } else if coeff.len() == 1 {
            terms.push(times(coeff.into_iter().next().expect("one"), tail));
        } else {
            let mut factors = vec![OperatorExpr::Sum(coeff)];
            factors.extend(tail);
            terms.push(OperatorExpr::Product(factors));
        }
    }
    if terms.is_empty() {
        return Ok(OperatorExpr::scalar(ComplexLit::new(
            BigRational::zero(),
            BigRational::zero(),
        )));
    }
    Ok(OperatorExpr::sum(terms))
}

/// Printed normal form of an operator.
pub fn print_operator<S: Scalar>(op: &DiffOperator<S>) -> Result<String> {
    Ok(operator_to_expr(op)?.to_string())
}

/// Round-trip corpus covering every atom.
pub const CORPUS: &[&str] = &[
    "D",
    "d1",
    "d2",
    "d3",
    "R1",
    "R2",
    "R3",
    "2",
    "3j",
    "2+3j",
    "1/2-7/3j",
    "0.25",
    "L[1, 0, 0, 0]",
    "L[[0, 1j, -2, 1/3]]",
    "M[0,-5j,-3,0]",
    "M[[1+1j, 0, 0, -1]]",
    "D + M[0,-5j,-3,0]",
    "D*D + (d1*d1 + d2*d2 + d3*d3)",
    "M[0,1,0,0] * M[0,0,1,0]",
    "-D + 4",
    "D - 4 - d1*R1",
    "R3*d3*R3 + d3",
    "(D + 4)*(D - 4)",
    "-(d1 + d2)*R2",
    "2*(L[0,1,0,0] - M[0,1,0,0])*d2",
    "d1*(d2*(d3))",
    "-(-D)",
    "D - (-d1)",
    "((D))",
    "L[0,0,1,0]*R1*M[0,0,0,1]*d3",
];
