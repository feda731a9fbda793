//! JSON parameter files. Complex values are written in the constant
//! grammar ("3+2*i", "pi*i/3") and parsed with the engine's own parser.

use pdde_core::analysis::LinearForm;
use pdde_core::parse::{parse_constant, parse_exppoly};
use pdde_core::scalar::Complex64;
use pdde_core::systems::{E1Params, E4Params, FgParams, OperatorSpec, SystemParams};
use pdde_core::theorems::{AuxSpec, TheoremId, TheoremParams};
use pdde_core::{MultiIndex, Polynomial};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub system: String,
    pub n: usize,
    /// 1-based derivative direction for system e1.
    #[serde(default)]
    pub mu: Option<usize>,
    /// Coefficients; unused by system fg.
    #[serde(default)]
    pub a: Vec<String>,
    pub c: Vec<String>,
    /// Outer powers (m1, m2) for system fg.
    #[serde(default)]
    pub m: Option<[u32; 2]>,
    /// Shift powers (n1, n2) for system fg.
    #[serde(default)]
    pub nn: Option<[u32; 2]>,
    /// Operator specs for system fg, one entry list per equation.
    #[serde(default, rename = "F")]
    pub f_op: Option<[Vec<OperatorEntry>; 2]>,
    #[serde(default, rename = "P")]
    pub p: Option<[String; 2]>,
    #[serde(default, rename = "Q")]
    pub q: Option<[String; 2]>,
}

#[derive(Debug, Deserialize)]
pub struct OperatorEntry {
    pub index: Vec<u32>,
    pub coeff: String,
}

fn complex_field(text: &str, what: &str) -> Result<Complex64, CliError> {
    parse_constant(text)
        .map_err(|e| CliError::input(format!("{what}: `{text}` is not a constant: {e}")))
}

fn complex_vec(texts: &[String], what: &str) -> Result<Vec<Complex64>, CliError> {
    texts
        .iter()
        .map(|t| complex_field(t, what))
        .collect()
}

impl ParamsFile {
    pub fn into_system(self) -> Result<SystemParams, CliError> {
        let n = self.n;
        if n == 0 {
            return Err(CliError::input("n must be positive"));
        }
        let c = complex_vec(&self.c, "c")?;
        if c.len() != n {
            return Err(CliError::input(format!("c must have length {n}")));
        }
        let system = match self.system.as_str() {
            "e1" => {
                let a = complex_vec(&self.a, "a")?;
                if a.len() != 4 {
                    return Err(CliError::input("system e1 takes a = [a1, a2, a3, a4]"));
                }
                let mu = self
                    .mu
                    .ok_or_else(|| CliError::input("system e1 requires mu (1-based)"))?;
                if mu == 0 || mu > n {
                    return Err(CliError::input(format!("mu must be in 1..={n}")));
                }
                SystemParams::E1(E1Params {
                    dim: n,
                    c,
                    mu: mu - 1,
                    a: [a[0], a[1], a[2], a[3]],
                })
            }
            "e4" => {
                let a = complex_vec(&self.a, "a")?;
                if a.len() != n + 2 {
                    return Err(CliError::input(format!(
                        "system e4 takes a = [a1..a{n}, a_n+1, a_n+2] ({} values)",
                        n + 2
                    )));
                }
                SystemParams::E4(E4Params { dim: n, c, a })
            }
            "fg" => {
                let m = self.m.ok_or_else(|| CliError::input("system fg requires m"))?;
                let nn = self
                    .nn
                    .ok_or_else(|| CliError::input("system fg requires nn"))?;
                let ops = self
                    .f_op
                    .ok_or_else(|| CliError::input("system fg requires f_op"))?;
                let p_texts = self.p.ok_or_else(|| CliError::input("system fg requires p"))?;
                let q_texts = self.q.ok_or_else(|| CliError::input("system fg requires q"))?;
                let mut built_ops = Vec::with_capacity(2);
                for entries in ops.iter() {
                    let mut converted = Vec::with_capacity(entries.len());
                    for e in entries {
                        if e.index.len() != n {
                            return Err(CliError::input(format!(
                                "operator index must have length {n}"
                            )));
                        }
                        let coeff = parse_exppoly(&e.coeff, n)
                            .map_err(|err| CliError::input(format!("operator coeff: {err}")))?;
                        converted.push((MultiIndex::new(e.index.clone()), coeff));
                    }
                    built_ops.push(
                        OperatorSpec::new(converted, n)
                            .map_err(|err| CliError::input(err.to_string()))?,
                    );
                }
                let op1 = built_ops.remove(0);
                let op2 = built_ops.remove(0);
                let parse_pair = |texts: &[String; 2],
                                  what: &str|
                 -> Result<[pdde_core::ExpPoly; 2], CliError> {
                    let a = parse_exppoly(&texts[0], n)
                        .map_err(|e| CliError::input(format!("{what}[0]: {e}")))?;
                    let b = parse_exppoly(&texts[1], n)
                        .map_err(|e| CliError::input(format!("{what}[1]: {e}")))?;
                    Ok([a, b])
                };
                SystemParams::Fg(FgParams {
                    dim: n,
                    c,
                    m,
                    n_pow: nn,
                    p: parse_pair(&p_texts, "P")?,
                    q: parse_pair(&q_texts, "Q")?,
                    op: [op1, op2],
                })
            }
            other => {
                return Err(CliError::input(format!(
                    "unknown system `{other}`; expected e1, e4 or fg"
                )))
            }
        };
        system
            .validate()
            .map_err(|e| CliError::input(e.to_string()))?;
        Ok(system)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremFile {
    pub theorem: String,
    pub system: ParamsFile,
    /// 1-based distinguished index for the directional-family theorems.
    #[serde(default)]
    pub mu: Option<usize>,
    #[serde(default)]
    pub b: Vec<String>,
    #[serde(default, rename = "A")]
    pub big_a: Option<String>,
    #[serde(default, rename = "B")]
    pub big_b: Option<String>,
    #[serde(default, rename = "K")]
    pub k: Option<[String; 4]>,
    #[serde(default)]
    pub nu: Option<u8>,
    #[serde(default)]
    pub psi1: Option<Vec<PsiPart>>,
    #[serde(default)]
    pub aux: Option<AuxFile>,
}

#[derive(Debug, Deserialize)]
pub struct PsiPart {
    pub form: Vec<String>,
    pub power: u32,
    pub coeff: String,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum AuxFile {
    Zero,
    Periodic { parts: Vec<PeriodicPart> },
    Homogeneous { m: Vec<String>, tau: String },
    Solve,
}

#[derive(Debug, Deserialize)]
pub struct PeriodicPart {
    pub form: Vec<String>,
    pub coeff: String,
}

impl TheoremFile {
    pub fn into_params(self) -> Result<TheoremParams, CliError> {
        let id = TheoremId::parse(&self.theorem)
            .ok_or_else(|| CliError::input(format!("unknown theorem `{}`", self.theorem)))?;
        let n = self.system.n;
        let system = self.system.into_system()?;
        let mu = match (&system, self.mu) {
            (SystemParams::E1(p), _) => p.mu,
            (_, Some(m)) if m >= 1 && m <= n => m - 1,
            (_, None) => 0,
            _ => return Err(CliError::input(format!("mu must be in 1..={n}"))),
        };
        let b = complex_vec(&self.b, "b")?;
        let parse_opt = |v: &Option<String>, what: &str| -> Result<Complex64, CliError> {
            match v {
                Some(t) => complex_field(t, what),
                None => Ok(pdde_core::scalar::ZERO),
            }
        };
        let big_a = parse_opt(&self.big_a, "A")?;
        let big_b = parse_opt(&self.big_b, "B")?;
        let k = match &self.k {
            Some(texts) => [
                complex_field(&texts[0], "K1")?,
                complex_field(&texts[1], "K2")?,
                complex_field(&texts[2], "K3")?,
                complex_field(&texts[3], "K4")?,
            ],
            None => [pdde_core::scalar::ONE; 4],
        };
        let psi1 = match &self.psi1 {
            None => None,
            Some(parts) => {
                let mut acc = Polynomial::zero(n);
                for part in parts {
                    if part.form.len() != n {
                        return Err(CliError::input(format!(
                            "psi1 form must have length {n}"
                        )));
                    }
                    let coeffs = complex_vec(&part.form, "psi1 form")?;
                    let coeff = complex_field(&part.coeff, "psi1 coeff")?;
                    if part.power < 2 {
                        return Err(CliError::input("psi1 powers must be at least 2"));
                    }
                    let term = Polynomial::linear(&coeffs)
                        .pow(part.power)
                        .map_err(|e| CliError::input(e.to_string()))?
                        .scale(coeff);
                    acc = acc.add(&term).map_err(|e| CliError::input(e.to_string()))?;
                }
                Some(acc)
            }
        };
        let aux = match &self.aux {
            None | Some(AuxFile::Solve) => {
                if matches!(id, TheoremId::T11 | TheoremId::T22 | TheoremId::T24) {
                    AuxSpec::Solve
                } else if self.aux.is_none() {
                    AuxSpec::Zero
                } else {
                    AuxSpec::Solve
                }
            }
            Some(AuxFile::Zero) => AuxSpec::Zero,
            Some(AuxFile::Periodic { parts }) => {
                let mut converted = Vec::with_capacity(parts.len());
                for part in parts {
                    if part.form.len() != n {
                        return Err(CliError::input(format!(
                            "periodic form must have length {n}"
                        )));
                    }
                    converted.push((
                        LinearForm::new(complex_vec(&part.form, "periodic form")?),
                        complex_field(&part.coeff, "periodic coeff")?,
                    ));
                }
                AuxSpec::Periodic(converted)
            }
            Some(AuxFile::Homogeneous { m, tau }) => {
                if m.len() != n {
                    return Err(CliError::input(format!(
                        "homogeneous form must have length {n}"
                    )));
                }
                AuxSpec::Homogeneous {
                    m: LinearForm::new(complex_vec(m, "homogeneous form")?),
                    tau: complex_field(tau, "tau")?,
                }
            }
        };
        Ok(TheoremParams {
            id,
            system,
            mu,
            b,
            big_a,
            big_b,
            k,
            nu: self.nu.unwrap_or(1),
            psi1,
            aux,
        })
    }
}
