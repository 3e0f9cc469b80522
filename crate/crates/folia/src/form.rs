//! Text format for 1-forms.
//!
//! A form is a polynomial expression that is linear in `dx, dy, dz`, for
//! example `y^3*dx + x^3*(x*dy - y*dx)`, optionally followed by a chart tag
//! `@ z=1`, `@ x=1` or `@ y=1`. Without a tag, a form mentioning `dz` is read
//! as homogeneous and anything else as affine in the chart `z = 1`. The
//! homogeneous triple `a; b; c` is accepted as well. Named parameters are
//! substituted by rational values before parsing; a parameter used as an
//! exponent must be a nonnegative integer.

use std::collections::HashMap;

use folia_algebra::parse::{tokenize, Parser, Tok};
use folia_algebra::{parse_polynomial, QPoly, Vars, Q};
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::foliation::{Chart, Foliation};

fn parse_err(e: folia_algebra::ParseError) -> Error {
    Error::Parse(e.to_string())
}

fn parse_chart(tag: &str) -> Result<Chart> {
    let t: String = tag.chars().filter(|c| !c.is_whitespace()).collect();
    match t.as_str() {
        "z=1" => Ok(Chart::Z),
        "x=1" => Ok(Chart::X),
        "y=1" => Ok(Chart::Y),
        _ => Err(Error::Parse(format!("unknown chart tag `{tag}`"))),
    }
}

fn substitute_params(toks: Vec<(usize, Tok)>, params: &HashMap<String, Q>) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::with_capacity(toks.len());
    for (pos, t) in toks {
        let Tok::Ident(name) = &t else {
            out.push((pos, t));
            continue;
        };
        let Some(val) = params.get(name) else {
            out.push((pos, t));
            continue;
        };
        if matches!(out.last(), Some((_, Tok::Op('^')))) {
            if !val.is_integer() || val.is_negative() {
                return Err(Error::Parse(format!("parameter `{name}` used as exponent at offset {pos} must be a nonnegative integer")));
            }
            out.push((pos, Tok::Num(val.to_integer())));
            continue;
        }
        out.push((pos, Tok::Op('(')));
        if val.is_negative() {
            out.push((pos, Tok::Op('-')));
        }
        out.push((pos, Tok::Num(val.numer().abs())));
        out.push((pos, Tok::Op('/')));
        out.push((pos, Tok::Num(val.denom().clone())));
        out.push((pos, Tok::Op(')')));
    }
    Ok(out)
}

/// Coefficients of `dx, dy, dz` and the chart (`None` for homogeneous input).
pub fn parse_components(text: &str, params: &[(String, Q)]) -> Result<(Option<Chart>, [QPoly; 3])> {
    let (body, tag) = match text.split_once('@') {
        Some((b, t)) => (b, Some(parse_chart(t)?)),
        None => (text, None),
    };
    let xyz = Vars::xyz();
    if body.contains(';') {
        let parts: Vec<&str> = body.split(';').collect();
        if parts.len() != 3 {
            return Err(Error::Parse("a homogeneous triple needs exactly three components".into()));
        }
        let mut comps = Vec::new();
        for p in parts {
            let toks = substitute_params(tokenize(p).map_err(parse_err)?, &params.iter().cloned().collect())?;
            comps.push(eval_tokens(&toks, p.len(), &xyz)?);
        }
        return Ok((None, comps.try_into().unwrap()));
    }
    let vars = Vars::new(&["x", "y", "z", "dx", "dy", "dz"]);
    let toks = substitute_params(tokenize(body).map_err(parse_err)?, &params.iter().cloned().collect())?;
    let poly = eval_tokens(&toks, body.len(), &vars)?;
    let mut comps = [QPoly::q_zero(&xyz), QPoly::q_zero(&xyz), QPoly::q_zero(&xyz)];
    for (m, c) in poly.terms() {
        let e = m.exps();
        if e[3] + e[4] + e[5] != 1 {
            return Err(Error::Parse("the expression must be linear in dx, dy, dz".into()));
        }
        let k = (3..6).find(|&i| e[i] == 1).unwrap() - 3;
        comps[k].add_term(folia_algebra::Monomial::new(e[..3].to_vec()), c.clone());
    }
    let chart = match tag {
        Some(c) => Some(c),
        None if !comps[2].is_zero() => None,
        None => Some(Chart::Z),
    };
    Ok((chart, comps))
}

fn eval_tokens(toks: &[(usize, Tok)], end: usize, vars: &Vars) -> Result<QPoly> {
    let mut p = Parser::new(toks, end);
    let e = p.expr().map_err(parse_err)?;
    if !p.at_end() {
        return Err(Error::Parse(format!("parse error at offset {}: trailing input", p.offset())));
    }
    e.eval(vars, &HashMap::new()).map_err(parse_err)
}

/// Parses and validates a form.
pub fn parse_form(text: &str, params: &[(String, Q)]) -> Result<Foliation> {
    let (chart, comps) = parse_components(text, params)?;
    match chart {
        None => {
            let [a, b, c] = comps;
            Foliation::new(a, b, c)
        }
        Some(ch) => {
            let (i, j, k) = ch.indices();
            if !comps[k].is_zero() {
                return Err(Error::Parse(format!("affine form in chart {ch} cannot use d{}", Vars::xyz().name(k))));
            }
            Foliation::from_affine(ch, &comps[i], &comps[j])
        }
    }
}

/// Canonical text: affine in `chart`, or homogeneous when `chart` is `None`.
pub fn form_text(f: &Foliation, chart: Option<Chart>) -> String {
    match chart {
        None => f.to_string(),
        Some(c) => f.affine(c).to_string(),
    }
}

/// Parses `name=value` pairs with rational values such as `3/2` or `-1`.
pub fn parse_param(s: &str) -> Result<(String, Q)> {
    let (n, v) = s.split_once('=').ok_or_else(|| Error::Parse(format!("expected name=value, got `{s}`")))?;
    Ok((n.trim().to_string(), parse_rational(v.trim())?))
}

pub fn parse_rational(s: &str) -> Result<Q> {
    folia_algebra::ring::parse_rational(s).ok_or_else(|| Error::Parse(format!("not a rational number: `{s}`")))
}

/// Homogeneous polynomial in `x, y, z`, used for curves and lines.
pub fn parse_curve(s: &str) -> Result<QPoly> {
    parse_polynomial(s, &Vars::xyz()).map_err(parse_err)
}

/// Small helper for printing rationals as `p/q`.
pub fn rat(q: &Q) -> String {
    folia_algebra::ring::rational_to_string(q)
}

/// Degree as a machine integer, for parameter values that must be integral.
pub fn as_u32(q: &Q) -> Option<u32> {
    if q.is_integer() && !q.is_negative() {
        q.to_integer().to_u32()
    } else {
        None
    }
}
