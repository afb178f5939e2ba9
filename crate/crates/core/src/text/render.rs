//! Plain-text and LaTeX forms of the exact types.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactfield::{Denom, Gq, Poly, PolyExp, RatExp};
use crate::opalgebra_x::DiffOpX;
use crate::opalgebra_z::{RatFunZ, TransDiffOpZ, ZDen};
use crate::waveform::WaveForm;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Style {
    Text,
    Latex,
}

/// Rendering in both styles. Text forms re-parse with the functions of
/// [`crate::text`].
pub trait Render {
    fn render(&self, style: Style) -> String;

    fn text(&self) -> String {
        self.render(Style::Text)
    }

    fn latex(&self) -> String {
        self.render(Style::Latex)
    }
}

/// Whether `s` has a `+` or `-` outside brackets after its first character.
pub(crate) fn needs_parens(s: &str) -> bool {
    let mut depth = 0i32;
    let mut prev = ' ';
    for (k, ch) in s.chars().enumerate() {
        match ch {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            '+' | '-' if depth == 0 && k > 0 && prev != '^' && prev != '{' => return true,
            _ => {}
        }
        if !ch.is_whitespace() {
            prev = ch;
        }
    }
    false
}

fn wrap(s: String, style: Style) -> String {
    if needs_parens(&s) {
        match style {
            Style::Text => format!("({s})"),
            Style::Latex => format!("\\left({s}\\right)"),
        }
    } else {
        s
    }
}

fn rational_latex(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else if r.is_negative() {
        format!("-\\frac{{{}}}{{{}}}", -r.numer(), r.denom())
    } else {
        format!("\\frac{{{}}}{{{}}}", r.numer(), r.denom())
    }
}

fn scalar(c: &Gq, style: Style) -> String {
    match style {
        Style::Text => c.to_string(),
        Style::Latex => {
            let (re, im) = (c.re(), c.im());
            let imag = if im.is_one() {
                "i".to_string()
            } else if (-&im).is_one() {
                "-i".to_string()
            } else {
                format!("{}i", rational_latex(&im))
            };
            if im.is_zero() {
                rational_latex(&re)
            } else if re.is_zero() {
                imag
            } else if im.is_negative() {
                format!("{}{}", rational_latex(&re), imag)
            } else {
                format!("{}+{}", rational_latex(&re), imag)
            }
        }
    }
}

/// `c·v^k` with the conventions `1·v = v`, `−1·v = −v`.
fn monomial(c: &Gq, var: &str, k: usize, style: Style) -> String {
    let cs = wrap(scalar(c, style), style);
    if k == 0 {
        return cs;
    }
    let v = match (k, style) {
        (1, _) => var.to_string(),
        (_, Style::Text) => format!("{var}^{k}"),
        (_, Style::Latex) => format!("{var}^{{{k}}}"),
    };
    if c.is_one() {
        v
    } else if (-c).is_one() {
        format!("-{v}")
    } else {
        match style {
            Style::Text => format!("{cs}*{v}"),
            Style::Latex => format!("{cs}{v}"),
        }
    }
}

/// Joins signed terms with ` + ` / ` - `, or without spaces when `compact`.
fn join(terms: Vec<String>, compact: bool) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let (plus, minus) = if compact { ("+", "-") } else { (" + ", " - ") };
    let mut out = String::new();
    for (k, t) in terms.into_iter().enumerate() {
        if k == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(minus);
            out.push_str(rest);
        } else {
            out.push_str(plus);
            out.push_str(&t);
        }
    }
    out
}

fn poly_terms(p: &Poly, var: &str, style: Style, descending: bool) -> Vec<String> {
    let mut out: Vec<String> = p
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| monomial(c, var, k, style))
        .collect();
    if descending {
        out.reverse();
    }
    out
}

fn exp_factor(l: &Gq, var: &str, style: Style) -> String {
    let arg = if l.is_one() {
        var.to_string()
    } else if (-l).is_one() {
        format!("-{var}")
    } else {
        let s = wrap(scalar(l, style), style);
        match style {
            Style::Text => format!("{s}*{var}"),
            Style::Latex => format!("{s}{var}"),
        }
    };
    match style {
        Style::Text => format!("exp({arg})"),
        Style::Latex => format!("e^{{{arg}}}"),
    }
}

fn polyexp_terms(f: &PolyExp, style: Style) -> Vec<String> {
    let mut out = Vec::new();
    for (l, p) in f.terms() {
        if l.is_zero() {
            out.extend(poly_terms(p, "x", style, false));
            continue;
        }
        let e = exp_factor(l, "x", style);
        let terms = poly_terms(p, "x", style, false);
        let sep = if style == Style::Text { "*" } else { "" };
        if terms.len() == 1 {
            let m = &terms[0];
            out.push(match m.as_str() {
                "1" => e,
                "-1" => format!("-{e}"),
                _ => format!("{m}{sep}{e}"),
            });
        } else {
            out.push(format!("{}{sep}{e}", wrap(join(terms, false), style)));
        }
    }
    out
}

impl Render for PolyExp {
    fn render(&self, style: Style) -> String {
        join(polyexp_terms(self, style), false)
    }
}

/// A polynomial in `z`, rendered with descending powers and no spaces.
pub struct ZPoly<'a>(pub &'a Poly);

impl Render for ZPoly<'_> {
    fn render(&self, style: Style) -> String {
        join(poly_terms(self.0, "z", style, true), true)
    }
}

/// Factors of a denominator as separate strings.
fn denom_parts(d: &Denom, style: Style) -> Vec<String> {
    d.factors().map(|(f, e)| power(f.render(style), e, style)).collect()
}

fn zden_parts(d: &ZDen, style: Style) -> Vec<String> {
    let mut out: Vec<String> = d
        .roots()
        .map(|(a, e)| {
            let lin = Poly::from_coeffs(alloc::vec![-a, Gq::one()]);
            power(ZPoly(&lin).render(style), e, style)
        })
        .collect();
    if !d.rest().is_one() {
        out.push(wrap(ZPoly(d.rest()).render(style), style));
    }
    out
}

fn power(base: String, e: u32, style: Style) -> String {
    let b = if needs_parens(&base) || (e > 1 && base.starts_with('-')) {
        match style {
            Style::Text => format!("({base})"),
            Style::Latex => format!("\\left({base}\\right)"),
        }
    } else {
        base
    };
    match (e, style) {
        (1, _) => b,
        (_, Style::Text) => format!("{b}^{e}"),
        (_, Style::Latex) => format!("{b}^{{{e}}}"),
    }
}

fn product(parts: Vec<String>, style: Style) -> String {
    match style {
        Style::Text => parts.join("*"),
        Style::Latex => parts.join(""),
    }
}

/// `num / den`, with `den` given by factors.
fn fraction(num: String, den: Vec<String>, style: Style) -> String {
    if den.is_empty() {
        return num;
    }
    match style {
        Style::Text => {
            let d = product(den.clone(), style);
            let d = if den.len() > 1 || !is_atom(&d) { format!("({d})") } else { d };
            let bare = num.strip_prefix('-').unwrap_or(&num);
            let n = if is_atom(bare) { num } else { format!("({num})") };
            format!("{n}/{d}")
        }
        Style::Latex => format!("\\frac{{{num}}}{{{}}}", product(den, style)),
    }
}

fn is_atom(s: &str) -> bool {
    s.chars().all(|c| c.is_alphanumeric() || c == '^' || c == '.')
}

impl Render for RatExp {
    fn render(&self, style: Style) -> String {
        let r = self.clone().cancel();
        fraction(r.num().render(style), denom_parts(r.den(), style), style)
    }
}

impl Render for RatFunZ {
    fn render(&self, style: Style) -> String {
        fraction(ZPoly(self.num()).render(style), zden_parts(self.den(), style), style)
    }
}

/// `coeff * op`, dropping a unit coefficient.
fn coeff_times(c: String, op: String, style: Style) -> String {
    if op.is_empty() {
        return c;
    }
    match c.as_str() {
        "1" => op,
        "-1" => format!("-{op}"),
        _ => {
            let c = if needs_parens(&c) || c.contains('/') && style == Style::Latex { wrap_forced(c, style) } else { c };
            match style {
                Style::Text => format!("{c}*{op}"),
                Style::Latex => format!("{c}{op}"),
            }
        }
    }
}

fn wrap_forced(s: String, style: Style) -> String {
    match style {
        Style::Text => format!("({s})"),
        Style::Latex => format!("\\left({s}\\right)"),
    }
}

impl Render for DiffOpX {
    fn render(&self, style: Style) -> String {
        let mut terms = Vec::new();
        for i in (0..self.numerators().len()).rev() {
            let c = self.coeff(i);
            if c.is_zero() {
                continue;
            }
            let op = match (i, style) {
                (0, _) => String::new(),
                (1, Style::Text) => "D".into(),
                (_, Style::Text) => format!("D^{i}"),
                (1, Style::Latex) => "\\partial".into(),
                (_, Style::Latex) => format!("\\partial^{{{i}}}"),
            };
            terms.push(coeff_times(c.render(style), op, style));
        }
        join(terms, false)
    }
}

impl Render for TransDiffOpZ {
    fn render(&self, style: Style) -> String {
        let mut terms = Vec::new();
        for (l, coeffs) in self.terms() {
            for k in (0..coeffs.len()).rev() {
                let r = &coeffs[k];
                if r.is_zero() {
                    continue;
                }
                let mut ops = Vec::new();
                match (k, style) {
                    (0, _) => {}
                    (1, Style::Text) => ops.push("Dz".to_string()),
                    (_, Style::Text) => ops.push(format!("Dz^{k}")),
                    (1, Style::Latex) => ops.push("\\partial_z".to_string()),
                    (_, Style::Latex) => ops.push(format!("\\partial_z^{{{k}}}")),
                }
                if !l.is_zero() {
                    ops.push(match style {
                        Style::Text => format!("S[{l}]"),
                        Style::Latex => format!("S_{{{}}}", scalar(l, style)),
                    });
                }
                let op = match style {
                    Style::Text => ops.join("*"),
                    Style::Latex => ops.join(" "),
                };
                terms.push(coeff_times(r.render(style), op, style));
            }
        }
        join(terms, false)
    }
}

impl Render for WaveForm {
    fn render(&self, style: Style) -> String {
        let exz = match style {
            Style::Text => "exp(x*z)",
            Style::Latex => "e^{xz}",
        };
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (k, c) in self.numerator().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let zk = match (k, style) {
                (0, _) => String::new(),
                (1, _) => "z".into(),
                (_, Style::Text) => format!("z^{k}"),
                (_, Style::Latex) => format!("z^{{{k}}}"),
            };
            terms.push(coeff_times(c.render(style), zk, style));
        }
        let num = join(terms, false);
        let mut den = denom_parts(self.xden(), style);
        den.extend(zden_parts(self.zden(), style));
        if den.is_empty() && num == "1" {
            return exz.into();
        }
        let pre = match style {
            Style::Text => {
                if den.is_empty() {
                    format!("({num})")
                } else {
                    format!("(({num})/({}))", product(den, style))
                }
            }
            Style::Latex => {
                if den.is_empty() {
                    format!("\\left({num}\\right)")
                } else {
                    format!("\\frac{{{num}}}{{{}}}", product(den, style))
                }
            }
        };
        match style {
            Style::Text => format!("{pre}*{exz}"),
            Style::Latex => format!("{pre}{exz}"),
        }
    }
}

impl Render for Gq {
    fn render(&self, style: Style) -> String {
        scalar(self, style)
    }
}
