//! Named foliations, each given by source text in the form grammar so the
//! parser is exercised on every entry.

use folia_algebra::Q;
use num_traits::One;

use crate::error::{Error, Result};
use crate::foliation::Foliation;
use crate::form::parse_form;

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub degree: u32,
    pub text: String,
    pub params: Vec<(String, Q)>,
    pub foliation: Foliation,
}

/// Entries and the parameter each one takes, if any.
pub const NAMES: [(&str, Option<&str>); 12] = [
    ("f1", None),
    ("f2", None),
    ("h1", None),
    ("h2", None),
    ("h12", None),
    ("h12-perturbed", None),
    ("g", Some("gamma")),
    ("jouanolou", None),
    ("f0", Some("lambda")),
    ("sans-singularite", None),
    ("sans-inflex", None),
    ("pencil", None),
];

fn text_for(name: &str, d: u32) -> Option<String> {
    let e = d.saturating_sub(1);
    Some(match name {
        "f1" => format!("y^{d}*dx + x^{d}*(x*dy - y*dx)"),
        "f2" => format!("x^{d}*dx + y^{d}*(x*dy - y*dx)"),
        "h1" => format!("y^{d}*dx - x^{d}*dy"),
        "h2" => format!("x^{d}*dx - y^{d}*dy"),
        "h12" => format!("(x^{d} + y^{d})*dx + x^{d}*dy"),
        "h12-perturbed" => format!("(x^{d} + y^{d})*dx + x^{d}*dy + dx"),
        "g" => format!("(x - gamma*y)*dy - y*dx + x^{d}*dx - y^{d}*dy"),
        "jouanolou" => format!("(x^{d}*y - 1)*dx + (y^{d} - x^{})*dy", d + 1),
        "f0" => format!("x*dy - lambda*y*dx + y^{d}*dy"),
        "sans-singularite" => format!("x*dy - y*dx + (3*y^{d} + 2*y)*dy"),
        "sans-inflex" => format!("dx + (2*y^{d} - 3*y^{e} + 1)*dy"),
        "pencil" => "x*dy - y*dx".to_string(),
        _ => return None,
    })
}

/// Builds an entry. `param` overrides the default parameter value
/// (`gamma = 1`, `lambda = 2`).
pub fn entry(name: &str, d: u32, param: Option<Q>) -> Result<CorpusEntry> {
    let (_, pname) = NAMES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Precondition(format!("unknown corpus entry `{name}`")))?;
    if name != "pencil" && d < 1 {
        return Err(Error::Precondition("degree must be at least 1".into()));
    }
    let text = text_for(name, d).unwrap();
    let params: Vec<(String, Q)> = match pname {
        Some(p) => {
            let default = if *p == "lambda" { Q::from_integer(2.into()) } else { Q::one() };
            vec![(p.to_string(), param.unwrap_or(default))]
        }
        None => Vec::new(),
    };
    let foliation = parse_form(&text, &params)?;
    Ok(CorpusEntry { name: name.to_string(), degree: foliation.degree(), text, params, foliation })
}

pub fn f1(d: u32) -> Foliation {
    entry("f1", d, None).unwrap().foliation
}

pub fn f2(d: u32) -> Foliation {
    entry("f2", d, None).unwrap().foliation
}

pub fn h1(d: u32) -> Foliation {
    entry("h1", d, None).unwrap().foliation
}

pub fn h2(d: u32) -> Foliation {
    entry("h2", d, None).unwrap().foliation
}

pub fn h12(d: u32) -> Foliation {
    entry("h12", d, None).unwrap().foliation
}

pub fn g(d: u32, gamma: Q) -> Foliation {
    entry("g", d, Some(gamma)).unwrap().foliation
}

pub fn jouanolou(d: u32) -> Foliation {
    entry("jouanolou", d, None).unwrap().foliation
}

pub fn f0(d: u32, lambda: Q) -> Foliation {
    entry("f0", d, Some(lambda)).unwrap().foliation
}
