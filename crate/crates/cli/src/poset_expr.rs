//! The poset expression grammar accepted by `--poset`, `--with` and `--target`.

use std::fs;

use bqt_core::posets::{build_boolean, build_linear, build_partition_ideal, build_singleton, dual, product, twist, PosetJson};
use bqt_core::WeightedPoset;
use bqt_field::{Character, Monomial, RatFunc};

use crate::{Failure, PosetOpts};

pub const GRAMMAR: &str = "\
poset expressions:
  POSET   := FACTOR ('|' FACTOR)*          product of factors, left to right
  FACTOR  := ATOM ['@' EXPR]               twist every weight by EXPR
  ATOM    := partitions['(' N [',rows=' R] [',cols=' C] ')']
           | linear['(' N [',' EXPR] ')']
           | boolean['(' EXPR (',' EXPR)* ')']
           | singleton['(' EXPR (',' EXPR)* ')']
           | dual'(' POSET ')'
           | PATH.json                     a poset as written by `bqt poset`
  EXPR    := rational expression in q, t, v, a1..a8 (q = v^2), e.g. q^2*a1/(1-t)

bare names take their parameters from flags:
  partitions  --max-boxes N (default 3) --max-rows R --max-cols C
  linear      --n N (default 3) --x0 EXPR (default 1)
  boolean     --n N (default 3), atoms a1..aN
  singleton   no contents
--twist EXPR twists the whole poset; --params R restricts symbolic parameters to a1..aR.";

/// Edge functions with a closed form on a poset built from the grammar.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedForm {
    /// `-Λ(-A x⁻¹ + (1-q)(1-t) B x⁻¹ + 1)` with linear term `A`.
    Lambda(Character),
    /// Products of `ψ_std` over the contents.
    Boolean,
}

#[derive(Clone, Debug)]
pub struct Built {
    pub poset: WeightedPoset,
    pub closed: Option<ClosedForm>,
    /// The first weight when the poset is a builtin linear poset.
    pub linear_x0: Option<RatFunc>,
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Splits `s` on `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Result<Vec<&str>, Failure> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(usage(format!("unbalanced parentheses in `{s}`")));
                }
            }
            c if c == sep && depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(usage(format!("unbalanced parentheses in `{s}`")));
    }
    parts.push(&s[start..]);
    Ok(parts)
}

/// The indices `j` of every symbol `a<j>` in an expression.
fn parameters_in(s: &str) -> Vec<usize> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    for (i, &b) in bytes.iter().enumerate() {
        if b != b'a' || (i > 0 && bytes[i - 1].is_ascii_alphanumeric()) {
            continue;
        }
        let digits: String = s[i + 1..].chars().take_while(|c| c.is_ascii_digit()).collect();
        if let Ok(j) = digits.parse() {
            out.push(j);
        }
    }
    out
}

/// Parses an expression, enforcing the `--params` bound.
pub fn expr(s: &str, params: Option<usize>) -> Result<RatFunc, Failure> {
    if let Some(r) = params {
        if let Some(j) = parameters_in(s).into_iter().find(|&j| j > r) {
            return Err(usage(format!("`{s}` uses a{j}, but only a1..a{r} are declared by --params")));
        }
    }
    bqt_field::parse(s.trim()).map_err(|e| usage(format!("cannot parse `{s}`: {e}")))
}

fn count(s: &str, what: &str) -> Result<usize, Failure> {
    s.trim().parse().map_err(|_| usage(format!("{what} must be a nonnegative integer, got `{s}`")))
}

fn keyed(arg: &str, key: &str) -> Option<String> {
    arg.trim().strip_prefix(key).and_then(|r| r.trim_start().strip_prefix('=')).map(|v| v.trim().to_string())
}

fn twist_built(b: Built, a: &RatFunc) -> Result<Built, Failure> {
    let poset = twist(&b.poset, a)?;
    let closed = match b.closed {
        Some(ClosedForm::Boolean) => Some(ClosedForm::Boolean),
        Some(ClosedForm::Lambda(ch)) => match a.as_monomial() {
            Some((c, m)) if c == 1.into() => Some(ClosedForm::Lambda(ch.mul_monomial(&m))),
            _ => None,
        },
        None => None,
    };
    let linear_x0 = b.linear_x0.map(|x| &x * a);
    Ok(Built { poset, closed, linear_x0 })
}

fn atom(s: &str, opts: &PosetOpts) -> Result<Built, Failure> {
    let s = s.trim();
    let params = opts.params;
    if s.ends_with(".json") {
        let text = fs::read_to_string(s).map_err(|e| usage(format!("cannot read {s}: {e}")))?;
        let mut v: serde_json::Value = serde_json::from_str(&text).map_err(|e| usage(format!("{s}: {e}")))?;
        if let Some(inner) = v.get_mut("definition") {
            v = inner.take();
        }
        let j: PosetJson = serde_json::from_value(v).map_err(|e| usage(format!("{s}: {e}")))?;
        return Ok(Built { poset: WeightedPoset::from_json(&j)?, closed: None, linear_x0: None });
    }
    let (name, args) = match s.find('(') {
        Some(i) => {
            let inner = s[i + 1..].strip_suffix(')').ok_or_else(|| usage(format!("expected `)` at the end of `{s}`")))?;
            (s[..i].trim(), Some(inner))
        }
        None => (s, None),
    };
    let args: Option<Vec<&str>> = match args {
        Some(inner) if inner.trim().is_empty() => Some(Vec::new()),
        Some(inner) => Some(split_top(inner, ',')?),
        None => None,
    };
    let symbols = |n: usize| -> Result<Vec<RatFunc>, Failure> {
        match params {
            Some(r) if n > r => Err(usage(format!("boolean with {n} atoms needs a1..a{n}, but --params declares {r}"))),
            _ => Ok((1..=n).map(RatFunc::a).collect()),
        }
    };
    match name {
        "partitions" => {
            let (boxes, rows, cols) = match &args {
                None => (opts.max_boxes.unwrap_or(3), opts.max_rows, opts.max_cols),
                Some(a) => {
                    let boxes = count(a.first().ok_or_else(|| usage("partitions(...) needs a box count"))?, "box count")?;
                    let (mut rows, mut cols) = (None, None);
                    for arg in &a[1..] {
                        if let Some(v) = keyed(arg, "rows") {
                            rows = Some(count(&v, "rows")?);
                        } else if let Some(v) = keyed(arg, "cols") {
                            cols = Some(count(&v, "cols")?);
                        } else {
                            return Err(usage(format!("unknown partitions argument `{arg}`")));
                        }
                    }
                    (boxes, rows, cols)
                }
            };
            let poset = build_partition_ideal(boxes, rows, cols);
            Ok(Built { poset, closed: Some(ClosedForm::Lambda(Character::monomial(Monomial::ONE))), linear_x0: None })
        }
        "linear" => {
            let (n, x0) = match &args {
                None => (opts.n.unwrap_or(3), expr(opts.x0.as_deref().unwrap_or("1"), params)?),
                Some(a) => match a.as_slice() {
                    [n] => (count(n, "length")?, RatFunc::one()),
                    [n, x] => (count(n, "length")?, expr(x, params)?),
                    _ => return Err(usage("linear takes (N) or (N, EXPR)")),
                },
            };
            let poset = build_linear(n, &x0)?;
            Ok(Built { poset, closed: None, linear_x0: Some(x0) })
        }
        "boolean" => {
            let weights = match &args {
                None => symbols(opts.n.unwrap_or(3))?,
                Some(a) => a.iter().map(|w| expr(w, params)).collect::<Result<_, _>>()?,
            };
            Ok(Built { poset: build_boolean(&weights)?, closed: Some(ClosedForm::Boolean), linear_x0: None })
        }
        "singleton" => {
            let contents = match &args {
                None => Vec::new(),
                Some(a) => a.iter().map(|w| expr(w, params)).collect::<Result<_, _>>()?,
            };
            Ok(Built { poset: build_singleton(&contents), closed: None, linear_x0: None })
        }
        "dual" => {
            let inner = args.ok_or_else(|| usage("dual needs a poset: dual(POSET)"))?.join(",");
            let b = parse_poset(&inner, opts)?;
            Ok(Built { poset: dual(&b.poset), closed: None, linear_x0: None })
        }
        other => Err(usage(format!("unknown poset `{other}`"))),
    }
}

fn factor(s: &str, opts: &PosetOpts) -> Result<Built, Failure> {
    let parts = split_top(s, '@')?;
    let mut b = atom(parts[0], opts)?;
    for a in &parts[1..] {
        b = twist_built(b, &expr(a, opts.params)?)?;
    }
    Ok(b)
}

/// Builds the poset an expression describes, without the global `--twist`.
pub fn parse_poset(s: &str, opts: &PosetOpts) -> Result<Built, Failure> {
    let factors = split_top(s, '|')?;
    let mut acc = factor(factors[0], opts)?;
    for f in &factors[1..] {
        let next = factor(f, opts)?;
        let closed = match (acc.closed, next.closed) {
            (Some(ClosedForm::Lambda(a)), Some(ClosedForm::Lambda(b))) => Some(ClosedForm::Lambda(a.add(&b))),
            _ => None,
        };
        acc = Built { poset: product(&acc.poset, &next.poset)?, closed, linear_x0: None };
    }
    Ok(acc)
}

/// Builds the poset and applies `--twist`.
pub fn build(s: &str, opts: &PosetOpts) -> Result<Built, Failure> {
    let b = parse_poset(s, opts)?;
    match &opts.twist {
        Some(a) => twist_built(b, &expr(a, opts.params)?),
        None => Ok(b),
    }
}
