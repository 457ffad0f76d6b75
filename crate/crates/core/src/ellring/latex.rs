//! LaTeX rendering of values.

use rug::Integer;

use super::{Basis, EllValue};
use crate::coeffield::{FieldElem, IntPoly};

/// Which symbols the generators stand for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variables {
    /// Ẽ, K̃, Π̃ at modulus k = s_h s_v.
    High,
    /// Ẽ_<, K̃_<, Π̃_< at modulus 1/k.
    Low,
    /// Isotropic values written in s = s_h = s_v.
    Isotropic,
}

#[derive(Clone, Copy, Debug)]
pub struct LatexStyle {
    pub vars: Variables,
    pub standalone: bool,
}

fn var_names(vars: Variables) -> (&'static str, &'static str) {
    match vars {
        Variables::Isotropic => ("s", "s"),
        _ => ("s_h", "s_v"),
    }
}

pub fn poly_latex(p: &IntPoly, vars: Variables) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let (h, v) = var_names(vars);
    let mut out = String::new();
    let q = if vars == Variables::Isotropic { p.diagonal() } else { p.clone() };
    for (n, ((a, b), c)) in q.sorted_terms().into_iter().enumerate() {
        let neg = c.cmp0() == std::cmp::Ordering::Less;
        let abs = Integer::from(c.abs_ref());
        if n == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut body = String::new();
        for (name, e) in [(h, a), (v, b)] {
            match e {
                0 => {}
                1 => body.push_str(name),
                _ => body.push_str(&format!("{name}^{{{e}}}")),
            }
        }
        if abs != 1 || body.is_empty() {
            out.push_str(&abs.to_string());
        }
        out.push_str(&body);
    }
    out
}

fn wrap(s: String) -> String {
    if s.contains(' ') {
        format!("\\left({s}\\right)")
    } else {
        s
    }
}

fn root_latex(i: usize, vars: Variables) -> &'static str {
    match (i, vars) {
        (0, _) => "",
        (1, Variables::Isotropic) | (2, Variables::Isotropic) => "\\left(1+s^{2}\\right)^{1/2}",
        (1, _) => "\\left(1+s_v^{2}\\right)^{1/2}",
        (2, _) => "\\left(1+s_h^{2}\\right)^{1/2}",
        (_, Variables::Isotropic) => "\\left(1+s^{2}\\right)",
        _ => "\\left(1+s_v^{2}\\right)^{1/2}\\left(1+s_h^{2}\\right)^{1/2}",
    }
}

pub fn field_latex(c: &FieldElem, vars: Variables) -> String {
    let mut parts = Vec::new();
    for (i, r) in c.components().iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        let num = poly_latex(r.num(), vars);
        let root = root_latex(i, vars);
        let body = if r.den().is_one() {
            if root.is_empty() {
                num
            } else if r.num().is_one() {
                root.to_string()
            } else {
                format!("{}\\,{root}", wrap(num))
            }
        } else {
            format!("\\frac{{{num}}}{{{}}}{}{root}", poly_latex(r.den(), vars), if root.is_empty() { "" } else { "\\," })
        };
        parts.push(body);
    }
    if parts.len() == 1 {
        parts.pop().unwrap()
    } else {
        format!("\\left({}\\right)", parts.join(" + "))
    }
}

impl EllValue {
    pub fn to_latex(&self, vars: Variables) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let sub = if vars == Variables::Low { "_<" } else { "" };
        let pi = match self.basis() {
            Basis::Pi => format!("\\tilde{{\\Pi}}{sub}"),
            Basis::PiP => {
                if vars == Variables::Low {
                    "\\tilde{\\Pi}_{p,<}".to_string()
                } else {
                    "\\tilde{\\Pi}_p".to_string()
                }
            }
        };
        let e = format!("\\tilde{{E}}{sub}");
        let k = format!("\\tilde{{K}}{sub}");
        let mut out = String::new();
        for (n, (m, c)) in self.terms().enumerate() {
            let mut gens = String::new();
            for (name, p) in [(&e, m.i), (&k, m.j), (&pi, m.l)] {
                match p {
                    0 => {}
                    1 => gens.push_str(name),
                    _ => gens.push_str(&format!("{name}^{{{p}}}")),
                }
            }
            let coeff = field_latex(c, vars);
            let (neg, coeff) = match coeff.strip_prefix('-') {
                Some(rest) if !rest.contains(" + ") && !rest.contains(" - ") => (true, rest.to_string()),
                _ => (false, coeff),
            };
            if n > 0 {
                out.push_str(if neg { " - " } else { " + " });
            } else if neg {
                out.push('-');
            }
            if gens.is_empty() {
                out.push_str(&coeff);
            } else if coeff == "1" {
                out.push_str(&gens);
            } else {
                out.push_str(&format!("{coeff}\\,{gens}"));
            }
        }
        out
    }
}

/// Wraps display math into a compilable document.
pub fn latex_document(lhs: &str, body: &str) -> String {
    format!(
        "\\documentclass{{article}}\n\\usepackage{{amsmath}}\n\\begin{{document}}\n\\begin{{multline*}}\n{lhs} = {body}\n\\end{{multline*}}\n\\end{{document}}\n"
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ellring::parse_value;

    #[test]
    fn renders_fractions_and_roots() {
        let v = parse_value("u_v*((s_h^2+1)/s_h*P - K/s_h)", Basis::Pi).unwrap();
        let s = v.to_latex(Variables::High);
        assert!(s.contains("\\tilde{\\Pi}"));
        assert!(s.contains("\\frac{s_h^{2} + 1}{s_h}"));
        assert!(s.contains("\\left(1+s_v^{2}\\right)^{1/2}"));
    }
}
