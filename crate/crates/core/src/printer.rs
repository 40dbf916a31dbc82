//! Deterministic rendering of symbols and operators.
//!
//! Text and LaTeX order terms by descending momentum (or derivative)
//! exponent, then ascending `q` and `hbar` exponents. JSON output is
//! hand-formatted against a fixed schema so identical inputs produce
//! identical bytes.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use num::{BigRational, One, Signed, Zero};

use crate::pdo::Pdo;
use crate::phase::PhaseFn;
use crate::qpoly::QPoly;
use crate::scalar::{GaussianRational, HScalar};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OutputFormat {
    Text,
    Latex,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "latex" => Ok(OutputFormat::Latex),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown format '{other}' (expected text, latex, or json)")),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum VarStyle {
    /// `p^a * q^b`
    Phase,
    /// `q^b * D^d` (coefficients stand left of derivatives)
    Operator,
}

struct Mono {
    outer: i64,
    q: u32,
    h: i64,
    coeff: GaussianRational,
}

fn flatten_phase(f: &PhaseFn) -> Vec<Mono> {
    let mut comps: Vec<_> = f.components().collect();
    comps.reverse();
    let mut out = Vec::new();
    for (m, poly) in comps {
        for (n, scalar) in poly.iter() {
            for (h, c) in scalar.iter() {
                out.push(Mono { outer: m, q: n, h, coeff: c.clone() });
            }
        }
    }
    out
}

fn flatten_pdo(a: &Pdo) -> Vec<Mono> {
    let mut comps: Vec<_> = a.iter().collect();
    comps.reverse();
    let mut out = Vec::new();
    for (d, poly) in comps {
        for (n, scalar) in poly.iter() {
            for (h, c) in scalar.iter() {
                out.push(Mono { outer: d, q: n, h, coeff: c.clone() });
            }
        }
    }
    out
}

fn ratio_text(r: &BigRational) -> String {
    format!("{r}")
}

fn ratio_latex(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else if r.is_negative() {
        format!("-\\frac{{{}}}{{{}}}", -r.numer().clone(), r.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

fn complex_text(c: &GaussianRational) -> String {
    let im_abs = c.im().abs();
    let im_part = if im_abs.is_one() { "i".to_string() } else { format!("{im_abs}*i") };
    let sign = if c.im().is_negative() { "-" } else { "+" };
    format!("({}{}{})", c.re(), sign, im_part)
}

fn complex_latex(c: &GaussianRational) -> String {
    let im_abs = c.im().abs();
    let im_part = if im_abs.is_one() {
        "i".to_string()
    } else {
        format!("{} i", ratio_latex(&im_abs))
    };
    let sign = if c.im().is_negative() { "-" } else { "+" };
    format!("\\left({} {} {}\\right)", ratio_latex(c.re()), sign, im_part)
}

/// Renders one monomial as (is_negative, body-without-sign).
fn term_body(m: &Mono, style: VarStyle, latex: bool) -> (bool, String) {
    let mut tail: Vec<String> = Vec::new();
    if m.h != 0 {
        let name = if latex { "\\hbar" } else { "hbar" };
        if m.h == 1 {
            tail.push(name.to_string());
        } else if latex {
            tail.push(format!("{name}^{{{}}}", m.h));
        } else {
            tail.push(format!("{name}^{}", m.h));
        }
    }
    let push_var = |tail: &mut Vec<String>, name: &str, e: i64| {
        if e == 0 {
            return;
        }
        if e == 1 {
            tail.push(name.to_string());
        } else if latex {
            tail.push(format!("{name}^{{{e}}}"));
        } else {
            tail.push(format!("{name}^{e}"));
        }
    };
    match style {
        VarStyle::Phase => {
            push_var(&mut tail, "p", m.outer);
            push_var(&mut tail, "q", m.q as i64);
        }
        VarStyle::Operator => {
            push_var(&mut tail, "q", m.q as i64);
            push_var(&mut tail, if latex { "\\partial" } else { "D" }, m.outer);
        }
    }

    let (re, im) = (m.coeff.re(), m.coeff.im());
    let mut negative = false;
    let mut parts: Vec<String> = Vec::new();
    if im.is_zero() {
        negative = re.is_negative();
        let mag = re.abs();
        if !mag.is_one() || tail.is_empty() {
            parts.push(if latex { ratio_latex(&mag) } else { ratio_text(&mag) });
        }
    } else if re.is_zero() {
        negative = im.is_negative();
        let mag = im.abs();
        if !mag.is_one() {
            parts.push(if latex { ratio_latex(&mag) } else { ratio_text(&mag) });
        }
        parts.push("i".to_string());
    } else {
        parts.push(if latex { complex_latex(&m.coeff) } else { complex_text(&m.coeff) });
    }
    parts.extend(tail);
    let sep = if latex { " " } else { "*" };
    (negative, parts.join(sep))
}

fn render_terms(monos: &[Mono], style: VarStyle, latex: bool) -> String {
    if monos.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, m) in monos.iter().enumerate() {
        let (negative, body) = term_body(m, style, latex);
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        out.push_str(&body);
    }
    out
}

fn render_json(monos: &[Mono], outer_key: &str) -> String {
    let mut s = String::from("{\"terms\":[");
    for (idx, m) in monos.iter().enumerate() {
        if idx > 0 {
            s.push(',');
        }
        write!(
            s,
            "{{\"{outer_key}\":{},\"q\":{},\"h\":{},\"re\":\"{}\",\"im\":\"{}\"}}",
            m.outer,
            m.q,
            m.h,
            m.coeff.re(),
            m.coeff.im()
        )
        .expect("writing to string cannot fail");
    }
    s.push_str("]}");
    s
}

pub fn render_phase(f: &PhaseFn, format: OutputFormat) -> String {
    let monos = flatten_phase(f);
    match format {
        OutputFormat::Text => render_terms(&monos, VarStyle::Phase, false),
        OutputFormat::Latex => render_terms(&monos, VarStyle::Phase, true),
        OutputFormat::Json => render_json(&monos, "p"),
    }
}

pub fn render_pdo(a: &Pdo, format: OutputFormat) -> String {
    let monos = flatten_pdo(a);
    match format {
        OutputFormat::Text => render_terms(&monos, VarStyle::Operator, false),
        OutputFormat::Latex => render_terms(&monos, VarStyle::Operator, true),
        OutputFormat::Json => render_json(&monos, "d"),
    }
}

pub fn render_qpoly(f: &QPoly, format: OutputFormat) -> String {
    render_phase(&PhaseFn::from_component(0, f.clone()), format)
}

/// Reads a symbol back from the JSON schema emitted by [`render_phase`].
pub fn phase_from_json(src: &str) -> Result<PhaseFn, String> {
    let value: serde_json::Value =
        serde_json::from_str(src).map_err(|e| format!("invalid JSON: {e}"))?;
    let terms = value
        .get("terms")
        .and_then(|t| t.as_array())
        .ok_or_else(|| "expected object with a 'terms' array".to_string())?;
    let mut out = PhaseFn::zero();
    for (idx, term) in terms.iter().enumerate() {
        let get_int = |key: &str| -> Result<i64, String> {
            term.get(key)
                .and_then(|v| v.as_i64())
                .ok_or_else(|| format!("term {idx}: missing integer field '{key}'"))
        };
        let get_rational = |key: &str| -> Result<BigRational, String> {
            let s = term
                .get(key)
                .and_then(|v| v.as_str())
                .ok_or_else(|| format!("term {idx}: missing string field '{key}'"))?;
            BigRational::from_str(s)
                .map_err(|e| format!("term {idx}: field '{key}' is not a rational: {e}"))
        };
        let p = get_int("p")?;
        let q = u32::try_from(get_int("q")?)
            .map_err(|_| format!("term {idx}: 'q' exponent must be non-negative"))?;
        let h = get_int("h")?;
        let coeff = GaussianRational::new(get_rational("re")?, get_rational("im")?);
        out = &out + &PhaseFn::monomial(p, q, HScalar::monomial(coeff, h));
    }
    Ok(out)
}

impl fmt::Display for PhaseFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_phase(self, OutputFormat::Text))
    }
}

impl fmt::Display for Pdo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_pdo(self, OutputFormat::Text))
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render_qpoly(self, OutputFormat::Text))
    }
}
