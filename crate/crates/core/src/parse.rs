//! Expression parser and canonical printer for families and marked points.
//!
//! Grammar: integer literals, identifiers z and t, operators + − * / ^
//! (exponents are nonnegative integers), and parentheses. `/` is always an
//! operator — `1/2` is a quotient of literals — and precedence is
//! ^ > unary − > * / > + −. A family expression evaluates to N(z)/D(z) with
//! coefficients in ℚ[t] and is then homogenized (z = x/y, denominators
//! cleared); a point expression evaluates in ℚ(t) and is normalized to a
//! coprime pair. The canonical printer emits a fully parenthesized normal
//! form, and parsing what it prints reproduces the value exactly.

use num::{BigInt, One, Zero};

use crate::biform::BiForm;
use crate::error::{Error, Result};
use crate::family::{make_family, RationalMapFamily};
use crate::point::{proj_normalize, ProjPointK};
use crate::poly::Poly;
use crate::rational::Rat;

/// Exponents above this are almost certainly typos and would only burn memory.
const MAX_EXPONENT: usize = 1024;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
    text: String,
}

fn err_at(s: &Spanned, msg: impl Into<String>) -> Error {
    Error::Parse {
        line: s.line,
        col: s.col,
        token: s.text.clone(),
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (tline, tcol) = (line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next().unwrap();
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        let spanned = |tok: Tok, text: String| Spanned {
            tok,
            line: tline,
            col: tcol,
            text,
        };
        if c.is_ascii_digit() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_digit() {
                    s.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            let n: BigInt = s.parse().expect("digits");
            out.push(spanned(Tok::Int(n), s));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let mut s = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' {
                    s.push(bump(&mut chars));
                } else {
                    break;
                }
            }
            out.push(spanned(Tok::Ident(s.clone()), s));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            other => {
                return Err(Error::Parse {
                    line: tline,
                    col: tcol,
                    token: other.to_string(),
                    msg: "unrecognized character".into(),
                })
            }
        };
        let ch = bump(&mut chars);
        out.push(spanned(tok, ch.to_string()));
    }
    out.push(Spanned {
        tok: Tok::End,
        line,
        col,
        text: "end of input".into(),
    });
    Ok(out)
}

/// Polynomial in z with coefficients in ℚ[t]; index = power of z.
type ZPoly = Vec<Poly>;

fn zp_trim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(Poly::is_zero) {
        v.pop();
    }
    v
}

fn zp_const(p: Poly) -> ZPoly {
    zp_trim(vec![p])
}

fn zp_is_zero(v: &ZPoly) -> bool {
    v.is_empty()
}

fn zp_add(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = vec![Poly::zero(); a.len().max(b.len())];
    for (i, p) in a.iter().enumerate() {
        out[i] = &out[i] + p;
    }
    for (i, p) in b.iter().enumerate() {
        out[i] = &out[i] + p;
    }
    zp_trim(out)
}

fn zp_neg(a: &ZPoly) -> ZPoly {
    a.iter().map(|p| -p).collect()
}

fn zp_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if zp_is_zero(a) || zp_is_zero(b) {
        return Vec::new();
    }
    let mut out = vec![Poly::zero(); a.len() + b.len() - 1];
    for (i, p) in a.iter().enumerate() {
        for (j, q) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(p * q);
        }
    }
    zp_trim(out)
}

fn zp_pow(a: &ZPoly, k: usize) -> ZPoly {
    let mut out = zp_const(Poly::one());
    for _ in 0..k {
        out = zp_mul(&out, a);
    }
    out
}

/// Rational function in z and t; the denominator is never the zero
/// polynomial (division by zero is rejected while parsing).
#[derive(Clone)]
struct RatFunc {
    num: ZPoly,
    den: ZPoly,
}

impl RatFunc {
    fn constant(r: Rat) -> RatFunc {
        RatFunc {
            num: zp_const(Poly::constant(r)),
            den: zp_const(Poly::one()),
        }
    }

    fn var_z() -> RatFunc {
        RatFunc {
            num: vec![Poly::zero(), Poly::one()],
            den: zp_const(Poly::one()),
        }
    }

    fn var_t() -> RatFunc {
        RatFunc {
            num: zp_const(Poly::from_ints(&[0, 1])),
            den: zp_const(Poly::one()),
        }
    }

    fn add(&self, rhs: &RatFunc) -> RatFunc {
        RatFunc {
            num: zp_add(&zp_mul(&self.num, &rhs.den), &zp_mul(&rhs.num, &self.den)),
            den: zp_mul(&self.den, &rhs.den),
        }
    }

    fn neg(&self) -> RatFunc {
        RatFunc {
            num: zp_neg(&self.num),
            den: self.den.clone(),
        }
    }

    fn mul(&self, rhs: &RatFunc) -> RatFunc {
        RatFunc {
            num: zp_mul(&self.num, &rhs.num),
            den: zp_mul(&self.den, &rhs.den),
        }
    }

    fn div(&self, rhs: &RatFunc, at: &Spanned) -> Result<RatFunc> {
        if zp_is_zero(&rhs.num) {
            return Err(err_at(at, "division by the zero polynomial"));
        }
        Ok(RatFunc {
            num: zp_mul(&self.num, &rhs.den),
            den: zp_mul(&self.den, &rhs.num),
        })
    }

    fn pow(&self, k: usize) -> RatFunc {
        RatFunc {
            num: zp_pow(&self.num, k),
            den: zp_pow(&self.den, k),
        }
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    allow_z: bool,
}

impl Parser {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let s = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        s
    }

    fn primary(&mut self) -> Result<RatFunc> {
        let s = self.bump();
        match &s.tok {
            Tok::Int(n) => Ok(RatFunc::constant(Rat::from_integer(n.clone()))),
            Tok::Ident(name) if name.as_str() == "t" => Ok(RatFunc::var_t()),
            Tok::Ident(name) if name.as_str() == "z" => {
                if self.allow_z {
                    Ok(RatFunc::var_z())
                } else {
                    Err(err_at(&s, "z is not allowed in a point expression"))
                }
            }
            Tok::Ident(_) => Err(err_at(&s, "unknown identifier (expected z or t)")),
            Tok::Minus => {
                // Unary minus binds tighter than * and / but looser than ^.
                let operand = self.expr(25)?;
                Ok(operand.neg())
            }
            Tok::LParen => {
                let inner = self.expr(0)?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(err_at(&close, "expected `)`"));
                }
                Ok(inner)
            }
            _ => Err(err_at(&s, "expected a number, z, t, `-`, or `(`")),
        }
    }

    fn exponent(&mut self) -> Result<usize> {
        let s = self.bump();
        let value: BigInt = match &s.tok {
            Tok::Int(n) => n.clone(),
            Tok::LParen => {
                let inner = self.expr(0)?;
                let close = self.bump();
                if close.tok != Tok::RParen {
                    return Err(err_at(&close, "expected `)`"));
                }
                as_integer_constant(&inner)
                    .ok_or_else(|| err_at(&s, "exponent must be a nonnegative integer"))?
            }
            _ => return Err(err_at(&s, "expected a nonnegative integer exponent")),
        };
        if value.sign() == num::bigint::Sign::Minus {
            return Err(err_at(&s, "exponent must be a nonnegative integer"));
        }
        let v: usize = value
            .try_into()
            .map_err(|_| err_at(&s, "exponent too large"))?;
        if v > MAX_EXPONENT {
            return Err(err_at(&s, "exponent too large"));
        }
        Ok(v)
    }

    fn expr(&mut self, min_bp: u8) -> Result<RatFunc> {
        let mut lhs = self.primary()?;
        loop {
            let s = self.peek().clone();
            let bp = match s.tok {
                Tok::Plus | Tok::Minus => 10,
                Tok::Star | Tok::Slash => 20,
                Tok::Caret => 30,
                Tok::RParen | Tok::End => break,
                _ => return Err(err_at(&s, "expected an operator")),
            };
            if bp < min_bp {
                break;
            }
            self.bump();
            match s.tok {
                Tok::Caret => {
                    let k = self.exponent()?;
                    lhs = lhs.pow(k);
                }
                Tok::Plus => {
                    let rhs = self.expr(bp + 1)?;
                    lhs = lhs.add(&rhs);
                }
                Tok::Minus => {
                    let rhs = self.expr(bp + 1)?;
                    lhs = lhs.add(&rhs.neg());
                }
                Tok::Star => {
                    let rhs = self.expr(bp + 1)?;
                    lhs = lhs.mul(&rhs);
                }
                Tok::Slash => {
                    let rhs = self.expr(bp + 1)?;
                    lhs = lhs.div(&rhs, &s)?;
                }
                _ => unreachable!(),
            }
        }
        Ok(lhs)
    }
}

fn as_integer_constant(rf: &RatFunc) -> Option<BigInt> {
    if rf.num.len() > 1 || rf.den.len() > 1 {
        return None;
    }
    let num = rf.num.first().cloned().unwrap_or_else(Poly::zero);
    let den = rf.den.first().cloned().unwrap_or_else(Poly::one);
    if num.deg().unwrap_or(0) > 0 || den.deg().unwrap_or(0) > 0 {
        return None;
    }
    let v = num.coeff(0) / den.coeff(0);
    if v.is_integer() {
        Some(v.to_integer())
    } else {
        None
    }
}

fn parse_text(text: &str, allow_z: bool) -> Result<RatFunc> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks,
        pos: 0,
        allow_z,
    };
    let rf = p.expr(0)?;
    let end = p.peek().clone();
    if end.tok != Tok::End {
        return Err(err_at(&end, "unexpected token after expression"));
    }
    Ok(rf)
}

/// Parse a family expression N(z)/D(z) and homogenize it.
pub fn parse_family(text: &str) -> Result<RationalMapFamily> {
    let rf = parse_text(text, true)?;
    if rf.den.len() == 1 && rf.den[0].deg().unwrap_or(0) > 0 {
        return Err(Error::domain(
            "the outer denominator must involve z or be a constant rational",
        ));
    }
    let d = rf.num.len().max(rf.den.len()).saturating_sub(1);
    let coeff = |v: &ZPoly, j: usize| v.get(d - j).cloned().unwrap_or_else(Poly::zero);
    let pc: Vec<Poly> = (0..=d).map(|j| coeff(&rf.num, j)).collect();
    let qc: Vec<Poly> = (0..=d).map(|j| coeff(&rf.den, j)).collect();
    make_family(BiForm::new(d, pc)?, BiForm::new(d, qc)?)
}

/// Parse a marked-point expression in t; "inf" is the point at infinity.
pub fn parse_point(text: &str) -> Result<ProjPointK> {
    if text.trim() == "inf" {
        return Ok(ProjPointK::infinity());
    }
    let rf = parse_text(text, false)?;
    let num = rf.num.first().cloned().unwrap_or_else(Poly::zero);
    let den = rf.den.first().cloned().unwrap_or_else(Poly::one);
    proj_normalize(num, den)
}

fn rat_string(r: &Rat) -> String {
    let body = if r.denom().is_one() {
        r.numer().magnitude().to_string()
    } else {
        format!("{}/{}", r.numer().magnitude(), r.denom())
    };
    if r.numer().sign() == num::bigint::Sign::Minus {
        format!("(-{body})")
    } else {
        body
    }
}

fn poly_string(p: &Poly) -> String {
    let mut terms = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let r = rat_string(c);
        terms.push(match k {
            0 => r,
            1 => format!("{r}*t"),
            _ => format!("{r}*t^{k}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

fn zpoly_string(zp: &[Poly]) -> String {
    let mut terms = Vec::new();
    for (i, c) in zp.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let p = format!("({})", poly_string(c));
        terms.push(match i {
            0 => p,
            1 => format!("{p}*z"),
            _ => format!("{p}*z^{i}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Canonical printed form; parsing it back yields an identical family.
pub fn print_family(f: &RationalMapFamily) -> String {
    let d = f.d();
    let dehom = |coeffs: &[Poly]| -> Vec<Poly> {
        // BiForm stores the x^{d−j} y^j coefficient at index j; index the
        // z-polynomial by the power of z instead.
        (0..=d).map(|i| coeffs[d - i].clone()).collect()
    };
    format!(
        "({}) / ({})",
        zpoly_string(&dehom(f.p().coeffs())),
        zpoly_string(&dehom(f.q().coeffs()))
    )
}

/// Canonical printed form; parsing it back yields an identical point.
pub fn print_point(a: &ProjPointK) -> String {
    if a.is_infinity() {
        "inf".into()
    } else {
        format!("({}) / ({})", poly_string(a.a1()), poly_string(a.a2()))
    }
}
