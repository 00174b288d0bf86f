use serde::{Deserialize, Serialize};

use crate::polyring::{format_rational, parse_rational, Polynomial, Rational, UniPoly};

use super::error::FamilyError;
use super::nice::NicePoly;

/// Component `u_i` (one-based `i`) supplied verbatim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeComponent {
    pub i: usize,
    pub u: Polynomial,
}

/// Level `i` of the tower: `u_i = Σ c_{i,j}(x) u^j + P_i(x_{i+1} + b_i(x)/(d_i l_i))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainLevel {
    pub i: usize,
    pub p: NicePoly,
    pub b: UniPoly,
    /// Optional declared `c_{i,1}, c_{i,2}, ...`; checked against the values the
    /// lower levels force.
    pub c: Option<Vec<UniPoly>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MainParams {
    pub n: usize,
    pub p: UniPoly,
    pub a: UniPoly,
    pub r: usize,
    /// Levels `i = 2, ..., r-1` in order.
    pub levels: Vec<MainLevel>,
    pub b_r: Rational,
    /// Components `u_i` for `i > r`; missing ones are zero.
    pub free: Vec<FreeComponent>,
}

impl MainParams {
    /// `deg p · Π deg P_i`, which governs the degree of the inverse.
    pub fn tower_degree(&self) -> u32 {
        let base = self.p.degree().finite().unwrap_or(0).max(1);
        self.levels.iter().map(|l| l.p.degree()).product::<u32>() * base
    }
}

/// `u = λ2 f(λ1 x + λ2 y) + c1`, `u2 = -λ1 f(λ1 x + λ2 y) + c2`, free `u3, ..., un`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cor1Params {
    pub n: usize,
    pub lambda1: Rational,
    pub lambda2: Rational,
    pub c1: Rational,
    pub c2: Rational,
    pub f: UniPoly,
    pub free: Vec<FreeComponent>,
}

/// Constant `u`, `u_i(x, x_{i+1})` for `2 <= i < r`, `u_r(x)`, free `u_i` beyond `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cor2Params {
    pub n: usize,
    pub r: usize,
    pub u: Rational,
    /// Components `u_2, ..., u_n`; missing ones are zero.
    pub components: Vec<FreeComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilyParams {
    Main(MainParams),
    Cor1(Cor1Params),
    Cor2(Cor2Params),
}

impl FamilyParams {
    pub fn n(&self) -> usize {
        match self {
            FamilyParams::Main(p) => p.n,
            FamilyParams::Cor1(p) => p.n,
            FamilyParams::Cor2(p) => p.n,
        }
    }

    pub fn case(&self) -> Case {
        match self {
            FamilyParams::Main(_) => Case::Main,
            FamilyParams::Cor1(_) => Case::Cor1,
            FamilyParams::Cor2(_) => Case::Cor2,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, FamilyError> {
        let file: ParamsFile = serde_json::from_str(text).map_err(|e| FamilyError::File(e.to_string()))?;
        Self::from_file(&file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("params serialize")
    }

    pub fn from_file(file: &ParamsFile) -> Result<Self, FamilyError> {
        let n = file.n;
        let free = file
            .free
            .iter()
            .map(|f| {
                Polynomial::parse(&f.u, n)
                    .map(|u| FreeComponent { i: f.i, u })
                    .map_err(|e| FamilyError::File(format!("free component {}: {e}", f.i)))
            })
            .collect::<Result<Vec<_>, _>>()?;
        match file.case {
            Case::Main => {
                let levels = file
                    .levels
                    .iter()
                    .map(|l| {
                        let coeffs = l.p.iter().map(|c| rational(c, "P")).collect::<Result<Vec<_>, _>>()?;
                        let p = NicePoly::from_coeffs(coeffs).map_err(|reason| FamilyError::NotNice {
                            condition: if l.i == 2 { "(a)" } else { "(b)" },
                            level: l.i,
                            reason,
                        })?;
                        let c = match &l.c {
                            None => None,
                            Some(list) => Some(list.iter().map(|c| univariate(c, 'x', "c")).collect::<Result<_, _>>()?),
                        };
                        Ok(MainLevel { i: l.i, p, b: univariate(&l.b, 'x', "b")?, c })
                    })
                    .collect::<Result<Vec<_>, FamilyError>>()?;
                Ok(FamilyParams::Main(MainParams {
                    n,
                    p: univariate(required(&file.p, "p")?, 'T', "p")?,
                    a: univariate(required(&file.a, "a")?, 'x', "a")?,
                    r: file.r.ok_or_else(|| missing("r"))?,
                    levels,
                    b_r: match &file.terminal {
                        Some(t) => rational(&t.b_r, "b_r")?,
                        None => Rational::default(),
                    },
                    free,
                }))
            }
            Case::Cor1 => Ok(FamilyParams::Cor1(Cor1Params {
                n,
                lambda1: rational(required(&file.lambda1, "lambda1")?, "lambda1")?,
                lambda2: rational(required(&file.lambda2, "lambda2")?, "lambda2")?,
                c1: optional_rational(&file.c1, "c1")?,
                c2: optional_rational(&file.c2, "c2")?,
                f: univariate(required(&file.f, "f")?, 'T', "f")?,
                free,
            })),
            Case::Cor2 => Ok(FamilyParams::Cor2(Cor2Params {
                n,
                r: file.r.ok_or_else(|| missing("r"))?,
                u: optional_rational(&file.u, "u")?,
                components: free,
            })),
        }
    }

    pub fn to_file(&self) -> ParamsFile {
        let free_file = |list: &[FreeComponent]| {
            list.iter().map(|f| FreeFile { i: f.i, u: f.u.to_string() }).collect::<Vec<_>>()
        };
        let mut file = ParamsFile { n: self.n(), case: self.case(), ..ParamsFile::default() };
        match self {
            FamilyParams::Main(m) => {
                file.p = Some(m.p.to_string_in('T'));
                file.a = Some(m.a.to_string_in('x'));
                file.r = Some(m.r);
                file.levels = m
                    .levels
                    .iter()
                    .map(|l| LevelFile {
                        i: l.i,
                        p: l.p.poly().coeffs().iter().map(format_rational).collect(),
                        b: l.b.to_string_in('x'),
                        c: l.c.as_ref().map(|c| c.iter().map(|q| q.to_string_in('x')).collect()),
                    })
                    .collect();
                file.terminal = Some(TerminalFile { b_r: format_rational(&m.b_r) });
                file.free = free_file(&m.free);
            }
            FamilyParams::Cor1(c) => {
                file.lambda1 = Some(format_rational(&c.lambda1));
                file.lambda2 = Some(format_rational(&c.lambda2));
                file.c1 = Some(format_rational(&c.c1));
                file.c2 = Some(format_rational(&c.c2));
                file.f = Some(c.f.to_string_in('T'));
                file.free = free_file(&c.free);
            }
            FamilyParams::Cor2(c) => {
                file.r = Some(c.r);
                file.u = Some(format_rational(&c.u));
                file.free = free_file(&c.components);
            }
        }
        file
    }
}

fn missing(field: &str) -> FamilyError {
    FamilyError::File(format!("missing field {field:?}"))
}

fn required<'a>(value: &'a Option<String>, field: &str) -> Result<&'a str, FamilyError> {
    value.as_deref().ok_or_else(|| missing(field))
}

fn rational(text: &str, field: &str) -> Result<Rational, FamilyError> {
    parse_rational(text.trim()).map_err(|e| FamilyError::File(format!("{field}: {e}")))
}

fn optional_rational(value: &Option<String>, field: &str) -> Result<Rational, FamilyError> {
    value.as_deref().map_or(Ok(Rational::default()), |t| rational(t, field))
}

fn univariate(text: &str, letter: char, field: &str) -> Result<UniPoly, FamilyError> {
    UniPoly::parse(text, letter).map_err(|e| FamilyError::File(format!("{field}: {e}")))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    #[default]
    Main,
    Cor1,
    Cor2,
}

/// On-disk params schema.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ParamsFile {
    pub n: usize,
    pub case: Case,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub levels: Vec<LevelFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terminal: Option<TerminalFile>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c1: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c2: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<String>,
    #[serde(default)]
    pub free: Vec<FreeFile>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelFile {
    pub i: usize,
    #[serde(rename = "P")]
    pub p: Vec<String>,
    pub b: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalFile {
    pub b_r: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreeFile {
    pub i: usize,
    pub u: String,
}
