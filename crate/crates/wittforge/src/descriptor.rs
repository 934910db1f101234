//! JSON descriptors for coefficient rings, modules, and displays, with a
//! small expression parser for matrix entries ("2*z^3 + 1", "(1+z)*u", …).
//! Field names are a stable interface for the command-line runner.

use crate::dieudonne::DieudonneModule;
use crate::display::{Display, WMat};
use crate::ramified::BaseDVR;
use crate::ring::{ChainElt, ChainRing};
use crate::semilinear::Mat;
use crate::witt::{build_witt_table, WittElt, WittRing};
use serde_json::{json, Value};

// ---------------------------------------------------------------------------
// entry expressions: integers, `z` (residue generator), `u` (uniformizer),
// `+ - * ^` and parentheses

struct Lexer<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let mut lx = Lexer {
        chars: s.chars().peekable(),
    };
    while let Some(&c) = lx.chars.peek() {
        match c {
            ' ' | '\t' => {
                lx.chars.next();
            }
            '+' => {
                lx.chars.next();
                out.push(Tok::Plus);
            }
            '-' => {
                lx.chars.next();
                out.push(Tok::Minus);
            }
            '*' => {
                lx.chars.next();
                out.push(Tok::Star);
            }
            '^' => {
                lx.chars.next();
                out.push(Tok::Caret);
            }
            '(' => {
                lx.chars.next();
                out.push(Tok::LParen);
            }
            ')' => {
                lx.chars.next();
                out.push(Tok::RParen);
            }
            '0'..='9' => {
                let mut v: i64 = 0;
                while let Some(&d) = lx.chars.peek() {
                    if let Some(dig) = d.to_digit(10) {
                        v = v
                            .checked_mul(10)
                            .and_then(|x| x.checked_add(dig as i64))
                            .ok_or("integer literal overflow")?;
                        lx.chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Int(v));
            }
            'a'..='z' | 'A'..='Z' | '_' => {
                let mut name = String::new();
                while let Some(&d) = lx.chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        name.push(d);
                        lx.chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Tok::Ident(name));
            }
            _ => return Err(format!("unexpected character '{c}' in expression")),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    ring: &'a ChainRing,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<ChainElt, String> {
        let mut acc = match self.peek() {
            Some(Tok::Minus) => {
                self.next();
                self.ring.neg(&self.term()?)
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.next();
                    let t = self.term()?;
                    acc = self.ring.add(&acc, &t);
                }
                Some(Tok::Minus) => {
                    self.next();
                    let t = self.term()?;
                    acc = self.ring.sub(&acc, &t);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<ChainElt, String> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            self.next();
            let f = self.factor()?;
            acc = self.ring.mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<ChainElt, String> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.next();
            match self.next() {
                Some(Tok::Int(k)) if k >= 0 => Ok(self.ring.pow(&base, k as u64)),
                _ => Err("exponent must be a nonnegative integer".into()),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<ChainElt, String> {
        match self.next() {
            Some(Tok::Int(v)) => Ok(self.ring.from_i64(v)),
            Some(Tok::Ident(name)) => match name.as_str() {
                "z" => Ok(self.ring.residue_gen()),
                "u" | "y" | "pi" => Ok(self.ring.uniformizer()),
                other => Err(format!("unknown generator '{other}'")),
            },
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err("missing closing parenthesis".into()),
                }
            }
            other => Err(format!("unexpected token {:?}", other)),
        }
    }
}

/// evaluate an entry expression in the given coefficient ring
pub fn parse_entry(ring: &ChainRing, s: &str) -> Result<ChainElt, String> {
    let toks = tokenize(s)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        ring,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(format!("trailing tokens in expression '{s}'"));
    }
    Ok(e)
}

/// canonical printable form: sum of `c*z^i*u^j` monomials, parseable back
pub fn fmt_entry(_ring: &ChainRing, x: &ChainElt) -> String {
    let mut parts = Vec::new();
    for (j, slot) in x.coeffs.iter().enumerate() {
        for (i, &c) in slot.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mut factors = Vec::new();
            if c != 1 || (i == 0 && j == 0) {
                factors.push(c.to_string());
            }
            if i == 1 {
                factors.push("z".into());
            } else if i > 1 {
                factors.push(format!("z^{i}"));
            }
            if j == 1 {
                factors.push("u".into());
            } else if j > 1 {
                factors.push(format!("u^{j}"));
            }
            parts.push(factors.join("*"));
        }
    }
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

// ---------------------------------------------------------------------------
// ring descriptors

pub fn ring_to_json(ring: &ChainRing) -> Value {
    if ring.e == 1 && ring.gr.nprec as usize > 1 {
        json!({"kind": "witt", "p": ring.p(), "s": ring.gr.s, "level": ring.n})
    } else {
        json!({"kind": "equalchar", "p": ring.p(), "s": ring.gr.s, "t": ring.n})
    }
}

fn get_u64(v: &Value, key: &str) -> Result<u64, String> {
    v.get(key)
        .and_then(Value::as_u64)
        .ok_or_else(|| format!("missing or invalid integer field '{key}'"))
}

pub fn ring_from_json(v: &Value) -> Result<ChainRing, String> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or("missing ring 'kind'")?;
    let p = get_u64(v, "p")?;
    let s = get_u64(v, "s")? as u32;
    match kind {
        "witt" => {
            let level = get_u64(v, "level")? as usize;
            Ok(ChainRing::witt_truncation(p, level, s))
        }
        "equalchar" => {
            let t = get_u64(v, "t")? as usize;
            Ok(ChainRing::equal_char(p, s, t, 1))
        }
        other => Err(format!("unknown ring kind '{other}'")),
    }
}

pub fn basedvr_from_json(v: &Value) -> Result<BaseDVR, String> {
    let p = get_u64(v, "p")?;
    let e = get_u64(v, "e")? as usize;
    let f = get_u64(v, "f")? as u32;
    let eis: Vec<i64> = v
        .get("eisenstein")
        .and_then(Value::as_array)
        .ok_or("missing 'eisenstein' array")?
        .iter()
        .map(|x| x.as_i64().ok_or("eisenstein coefficients must be integers".to_string()))
        .collect::<Result<_, _>>()?;
    if eis.len() != e + 1 || eis[e] != 1 {
        return Err("eisenstein polynomial must be monic of degree e".into());
    }
    Ok(BaseDVR::new(p, e, f, eis))
}

pub fn basedvr_to_json(b: &BaseDVR) -> Value {
    json!({"p": b.p, "e": b.e, "f": b.f, "eisenstein": b.eis})
}

// ---------------------------------------------------------------------------
// module descriptors

fn matrix_from_json(ring: &ChainRing, v: &Value, rank: usize) -> Result<Mat, String> {
    let rows = v.as_array().ok_or("matrix must be an array of rows")?;
    if rows.len() != rank {
        return Err("matrix row count mismatch".into());
    }
    let mut m = Mat::zeros(ring, rank, rank);
    for (i, row) in rows.iter().enumerate() {
        let cells = row.as_array().ok_or("matrix row must be an array")?;
        if cells.len() != rank {
            return Err("matrix column count mismatch".into());
        }
        for (j, cell) in cells.iter().enumerate() {
            let e = match cell {
                Value::String(s) => parse_entry(ring, s)?,
                Value::Number(n) => {
                    ring.from_i64(n.as_i64().ok_or("non-integer matrix entry")?)
                }
                _ => return Err("matrix entries must be strings or integers".into()),
            };
            *m.at_mut(i, j) = e;
        }
    }
    Ok(m)
}

fn matrix_to_json(ring: &ChainRing, m: &Mat) -> Value {
    Value::Array(
        (0..m.rows)
            .map(|i| {
                Value::Array(
                    (0..m.cols)
                        .map(|j| Value::String(fmt_entry(ring, m.at(i, j))))
                        .collect(),
                )
            })
            .collect(),
    )
}

pub fn module_from_json(v: &Value) -> Result<DieudonneModule, String> {
    let ring = ring_from_json(v.get("coeff").ok_or("missing 'coeff' ring")?)?;
    let rank = get_u64(v, "rank")? as usize;
    let level = get_u64(v, "level")? as usize;
    if level != ring.n {
        return Err("'level' must match the coefficient ring length".into());
    }
    if v.get("twistF").and_then(Value::as_i64) != Some(1)
        || v.get("twistV").and_then(Value::as_i64) != Some(-1)
    {
        return Err("twistF must be 1 and twistV must be -1".into());
    }
    let f = matrix_from_json(&ring, v.get("F").ok_or("missing 'F'")?, rank)?;
    let vv = matrix_from_json(&ring, v.get("V").ok_or("missing 'V'")?, rank)?;
    let d = DieudonneModule::new(ring, f, vv);
    d.validate()?;
    Ok(d)
}

pub fn module_to_json(d: &DieudonneModule) -> Value {
    json!({
        "coeff": ring_to_json(&d.ring),
        "rank": d.rank,
        "F": matrix_to_json(&d.ring, &d.f_map.mat),
        "twistF": 1,
        "V": matrix_to_json(&d.ring, &d.v_map.mat),
        "twistV": -1,
        "level": d.ring.n,
    })
}

// ---------------------------------------------------------------------------
// display descriptors: structural entries are Witt coordinate lists

pub fn display_from_json(v: &Value) -> Result<Display, String> {
    let base = ring_from_json(v.get("base").ok_or("missing 'base' ring")?)?;
    if base.gr.nprec != 1 {
        return Err("display base must have characteristic p".into());
    }
    let depth = get_u64(v, "depth")? as usize;
    let rank_l = get_u64(v, "rankL")? as usize;
    let rank_t = get_u64(v, "rankT")? as usize;
    let h = rank_l + rank_t;
    let wr = WittRing::new(build_witt_table(base.p(), depth), base.clone());
    let rows = v
        .get("structural")
        .and_then(Value::as_array)
        .ok_or("missing 'structural'")?;
    if rows.len() != h {
        return Err("structural row count mismatch".into());
    }
    let mut structural = WMat::zeros(&wr, h, h);
    for (i, row) in rows.iter().enumerate() {
        let cells = row.as_array().ok_or("structural row must be an array")?;
        if cells.len() != h {
            return Err("structural column count mismatch".into());
        }
        for (j, cell) in cells.iter().enumerate() {
            let coords = cell
                .as_array()
                .ok_or("structural entries must be coordinate lists")?;
            if coords.len() != depth {
                return Err("witt coordinate list length must equal the depth".into());
            }
            let w: WittElt = coords
                .iter()
                .map(|c| match c {
                    Value::String(s) => parse_entry(&base, s),
                    Value::Number(n) => Ok(base.from_i64(n.as_i64().unwrap_or(0))),
                    _ => Err("coordinates must be strings or integers".into()),
                })
                .collect::<Result<_, _>>()?;
            *structural.at_mut(i, j) = w;
        }
    }
    let d = Display::new(wr, rank_l, rank_t, structural);
    d.validate()?;
    Ok(d)
}

pub fn display_to_json(d: &Display) -> Value {
    let base = &d.witt.base;
    let h = d.height();
    let structural = Value::Array(
        (0..h)
            .map(|i| {
                Value::Array(
                    (0..h)
                        .map(|j| {
                            Value::Array(
                                d.structural
                                    .at(i, j)
                                    .iter()
                                    .map(|c| Value::String(fmt_entry(base, c)))
                                    .collect(),
                            )
                        })
                        .collect(),
                )
            })
            .collect(),
    );
    json!({
        "base": ring_to_json(base),
        "depth": d.witt.depth(),
        "rankL": d.rank_l,
        "rankT": d.rank_t,
        "structural": structural,
    })
}
