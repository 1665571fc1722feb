//! A small language for products of L-series.
//!
//! ```text
//! spec := term ('*' term)*
//! term := atom ('^' INT)?
//! atom := 'zeta' | 'chi(' INT ')' | rep ('x' rep)?
//!       | 'sym2(' inner ')' | 'alt2(' inner ')'
//! rep  := 'sym' N '(' FORM ')' | FORM | '(' rep ('+' rep)* ')' | '1'
//! inner := 'sym' N '(' FORM ')' | FORM
//! ```
//!
//! `sym2(delta)` is the symmetric square of `delta`, while
//! `sym2(sym3(delta))` is the plethysm of `sym3(delta)`. `a x b` is the
//! Rankin-Selberg pairing.

use std::sync::Arc;

use crate::char_ring::{IrredDecomp, IrredPart, Irrep, Plethysm};
use crate::error::{Error, Result};
use crate::forms::{Form, FormBank, QuadraticCharacter};
use crate::local_factors::Normalization;
use crate::series::{Factor, LSeriesSpec};

/// A sum of symmetric powers of one form; `form` is `None` only when every
/// part is the trivial representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepAst {
    pub form: Option<String>,
    pub parts: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AtomAst {
    Zeta,
    Chi(i64),
    Rep(RepAst),
    Pair(RepAst, RepAst),
    Plethysm { kind: Plethysm, j: u32, form: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecAst {
    pub terms: Vec<(AtomAst, u32)>,
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.rest().chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
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
            self.err(format!("expected `{c}`"))
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || "_./~-".contains(c)))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return self.err("expected a name");
        }
        let s = self.rest()[..len].to_string();
        self.pos += len;
        Ok(s)
    }

    fn peek_ident(&mut self) -> Option<String> {
        let save = self.pos;
        let r = self.ident().ok();
        self.pos = save;
        r
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.rest().starts_with('-');
        let body = &self.rest()[neg as usize..];
        let len = body.find(|c: char| !c.is_ascii_digit()).unwrap_or(body.len());
        if len == 0 {
            return self.err("expected an integer");
        }
        let text = &self.src[start..start + neg as usize + len];
        self.pos = start + neg as usize + len;
        text.parse().map_err(|_| Error::Parse {
            pos: start,
            msg: format!("integer `{text}` out of range"),
        })
    }
}

fn sym_index(name: &str) -> Option<u32> {
    name.strip_prefix("sym")
        .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
        .and_then(|d| d.parse().ok())
}

fn check_form_name(c: &Cursor, name: &str) -> Result<()> {
    if name == "x" || name == "zeta" || sym_index(name).is_some() {
        return c.err(format!("`{name}` is not a form name"));
    }
    Ok(())
}

/// `symN(FORM)` or `FORM`, returning `(N, FORM)`.
fn sym_of_form(c: &mut Cursor) -> Result<(u32, String)> {
    let name = c.ident()?;
    if let Some(j) = sym_index(&name) {
        c.expect('(')?;
        let form = c.ident()?;
        check_form_name(c, &form)?;
        c.expect(')')?;
        return Ok((j, form));
    }
    check_form_name(c, &name)?;
    Ok((1, name))
}

fn parse_rep(c: &mut Cursor) -> Result<RepAst> {
    match c.peek() {
        Some('(') => {
            c.expect('(')?;
            let mut acc = parse_rep(c)?;
            while c.eat('+') {
                let start = c.pos;
                let next = parse_rep(c)?;
                match (&acc.form, &next.form) {
                    (Some(a), Some(b)) if a != b => {
                        return Err(Error::Parse {
                            pos: start,
                            msg: format!("sums must use one form, got `{a}` and `{b}`"),
                        })
                    }
                    (None, Some(b)) => acc.form = Some(b.clone()),
                    _ => {}
                }
                acc.parts.extend(next.parts);
            }
            c.expect(')')?;
            Ok(acc)
        }
        Some('1') => {
            c.pos += 1;
            Ok(RepAst {
                form: None,
                parts: vec![0],
            })
        }
        _ => {
            let (j, form) = sym_of_form(c)?;
            Ok(RepAst {
                form: Some(form),
                parts: vec![j],
            })
        }
    }
}

fn parse_atom(c: &mut Cursor) -> Result<AtomAst> {
    let start = c.pos;
    match c.peek_ident().as_deref() {
        Some("zeta") => {
            c.ident()?;
            return Ok(AtomAst::Zeta);
        }
        Some("chi") => {
            c.ident()?;
            c.expect('(')?;
            let d = c.int()?;
            c.expect(')')?;
            return Ok(AtomAst::Chi(d));
        }
        Some(kw @ ("sym2" | "alt2")) => {
            c.ident()?;
            c.expect('(')?;
            let inner = c.peek_ident();
            let nested = inner.as_deref().and_then(sym_index).is_some();
            if kw == "alt2" || nested {
                let (j, form) = sym_of_form(c)?;
                c.expect(')')?;
                let kind = if kw == "sym2" {
                    Plethysm::Sym2
                } else {
                    Plethysm::Alt2
                };
                return Ok(AtomAst::Plethysm { kind, j, form });
            }
            c.pos = start;
        }
        _ => {}
    }
    let a = parse_rep(c)?;
    // only an operator can follow a rep, so `x` here is always the pairing
    if c.eat('x') {
        let b = parse_rep(c)?;
        return Ok(AtomAst::Pair(a, b));
    }
    Ok(AtomAst::Rep(a))
}

pub fn parse_spec(src: &str) -> Result<SpecAst> {
    let mut c = Cursor { src, pos: 0 };
    let mut terms = Vec::new();
    loop {
        let atom = parse_atom(&mut c)?;
        let mut e = 1;
        if c.eat('^') {
            let start = c.pos;
            e = c.int()?;
            if e < 1 || e > u32::MAX as i64 {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("exponent {e} must be positive"),
                });
            }
        }
        terms.push((atom, e as u32));
        if !c.eat('*') {
            break;
        }
    }
    if c.peek().is_some() {
        return c.err("unexpected trailing input");
    }
    Ok(SpecAst { terms })
}

fn rep_factor(r: &RepAst, bank: &FormBank, pmax: u64) -> Result<Factor> {
    let Some(name) = &r.form else {
        if r.parts.len() > 1 {
            return Err(Error::Config("write `zeta^n` for a multiple of the trivial factor".into()));
        }
        return Ok(Factor::Zeta);
    };
    let form = bank.get(name, pmax)?;
    if r.parts == [0] {
        return Ok(Factor::Zeta);
    }
    Ok(Factor::Rep {
        forms: vec![form],
        decomp: parts_decomp(&r.parts)?,
    })
}

fn parts_decomp(parts: &[u32]) -> Result<IrredDecomp> {
    IrredDecomp::from_parts(
        1,
        parts.iter().map(|&j| IrredPart {
            first: Irrep::new(j, 0),
            second: None,
            mult: 1,
        }),
    )
}

fn atom_factor(a: &AtomAst, bank: &FormBank, pmax: u64) -> Result<Factor> {
    Ok(match a {
        AtomAst::Zeta => Factor::Zeta,
        AtomAst::Chi(d) => Factor::Dirichlet(QuadraticCharacter::new(*d)?),
        AtomAst::Rep(r) => rep_factor(r, bank, pmax)?,
        AtomAst::Pair(x, y) => Factor::pairing(rep_factor(x, bank, pmax)?, rep_factor(y, bank, pmax)?),
        AtomAst::Plethysm { kind, j, form } => Factor::Plethysm {
            form: bank.get(form, pmax)?,
            inner: IrredDecomp::single(*j, 0),
            kind: *kind,
            twist: 0,
        },
    })
}

/// Parses and resolves a spec; forms come from `bank` with data up to
/// `pmax`.
pub fn build_spec(src: &str, bank: &FormBank, pmax: u64, norm: Normalization) -> Result<LSeriesSpec> {
    let ast = parse_spec(src)?;
    let factors = ast
        .terms
        .iter()
        .map(|(a, e)| Ok((atom_factor(a, bank, pmax)?, *e)))
        .collect::<Result<Vec<_>>>()?;
    LSeriesSpec::new(src.trim(), factors, norm)
}

/// Forms a built spec refers to, deduplicated by name.
pub fn spec_forms(spec: &LSeriesSpec) -> Vec<Arc<Form>> {
    let mut out: Vec<Arc<Form>> = Vec::new();
    for f in spec.forms() {
        if !out.iter().any(|g| g.name == f.name) {
            out.push(f);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(form: &str, parts: &[u32]) -> RepAst {
        RepAst {
            form: Some(form.into()),
            parts: parts.to_vec(),
        }
    }

    #[test]
    fn grammar() {
        let ast = parse_spec("zeta * sym2(delta)^2 * chi(-4) * sym2(sym3(delta)) * alt2(f16)").unwrap();
        assert_eq!(
            ast.terms,
            vec![
                (AtomAst::Zeta, 1),
                (AtomAst::Rep(rep("delta", &[2])), 2),
                (AtomAst::Chi(-4), 1),
                (
                    AtomAst::Plethysm {
                        kind: Plethysm::Sym2,
                        j: 3,
                        form: "delta".into()
                    },
                    1
                ),
                (
                    AtomAst::Plethysm {
                        kind: Plethysm::Alt2,
                        j: 1,
                        form: "f16".into()
                    },
                    1
                ),
            ]
        );
        let ast = parse_spec("(1 + sym2(delta) + sym4(delta)) x sym2(f16)").unwrap();
        assert_eq!(
            ast.terms,
            vec![(
                AtomAst::Pair(rep("delta", &[0, 2, 4]), rep("f16", &[2])),
                1
            )]
        );
        let tight = parse_spec("sym2(delta)xsym2(delta)").unwrap();
        assert_eq!(tight, parse_spec("sym2(delta) x sym2(delta)").unwrap());
        assert_eq!(
            parse_spec("zeta*chi(-163)").unwrap().terms,
            vec![(AtomAst::Zeta, 1), (AtomAst::Chi(-163), 1)]
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(parse_spec("zeta *"), Err(Error::Parse { pos: 6, .. })));
        assert!(matches!(parse_spec("sym2(delta"), Err(Error::Parse { pos: 10, .. })));
        assert!(matches!(
            parse_spec("(sym2(delta) + f16)"),
            Err(Error::Parse { pos: 14, .. })
        ));
        assert!(matches!(parse_spec("zeta^0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_spec("zeta zeta"), Err(Error::Parse { .. })));
    }

    #[test]
    fn built_degrees() {
        let bank = FormBank::new();
        let s = build_spec("sym2(delta) x sym2(delta)", &bank, 20, Normalization::Unitary).unwrap();
        assert_eq!(s.degree(), 9);
        assert_eq!(s.pole_order, 1);
        let s = build_spec("zeta * sym2(sym3(delta))", &bank, 20, Normalization::Unitary).unwrap();
        assert_eq!(s.degree_list(), vec![1, 10]);
    }
}
