//! JSON ring-descriptor format:
//! `{"carrier": ..., "ring_of_def": [...], "ideal_of_def": [...], "prime": p}`.
//! Round-trips losslessly; every subcommand reads rings through it.

use serde::{Deserialize, Serialize};

use zadic_core::arith::{parse_poly, parse_rat, MPoly, Rat, RatFunc};
use zadic_core::fadic::{Carrier, Elem, MultSet, PolyVar, RingPresentation};
use zadic_core::Error as CoreError;

use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ElemJson {
    /// Polynomial in the surface syntax.
    Plain(String),
    /// Fraction num/den, both polynomials.
    Frac { num: String, den: String },
    /// Multivariate element of a tensor carrier.
    Multi {
        vars: Vec<String>,
        terms: Vec<TermJson>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TermJson {
    pub exps: Vec<u32>,
    pub coeff: String,
}

impl ElemJson {
    pub fn to_elem(&self) -> Result<Elem, CliError> {
        match self {
            ElemJson::Plain(src) => Ok(Elem::from_poly(parse_poly(src).map_err(CliError::parse)?)),
            ElemJson::Frac { num, den } => {
                let num = parse_poly(num).map_err(CliError::parse)?;
                let den = parse_poly(den).map_err(CliError::parse)?;
                Ok(Elem::Fun(RatFunc::new(num, den).map_err(CliError::parse)?))
            }
            ElemJson::Multi { vars, terms } => {
                let vars_ref: Vec<&str> = vars.iter().map(|s| s.as_str()).collect();
                let mut acc = MPoly::zero(&vars_ref);
                for t in terms {
                    let coeff: Rat = parse_rat(&t.coeff).map_err(CliError::parse)?;
                    let m = MPoly::monomial(&vars_ref, &t.exps, coeff);
                    acc = acc.add(&m).map_err(CliError::parse)?;
                }
                Ok(Elem::Multi(acc))
            }
        }
    }

    pub fn from_elem(e: &Elem) -> Self {
        match e {
            Elem::Fun(f) => {
                if let Some(p) = f.as_poly() {
                    ElemJson::Plain(format!("{p}"))
                } else {
                    ElemJson::Frac {
                        num: format!("{}", f.num()),
                        den: format!("{}", f.den()),
                    }
                }
            }
            Elem::Multi(m) => ElemJson::Multi {
                vars: m.vars().to_vec(),
                terms: m
                    .terms()
                    .map(|(e, c)| TermJson {
                        exps: e.clone(),
                        coeff: format!("{c}"),
                    })
                    .collect(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum CarrierJson {
    /// "Q", "Z" or "zero".
    Name(String),
    PLocal {
        p_local_ints: u64,
    },
    PolyRing {
        poly_ring_over_q: String,
    },
    Quotient {
        quotient: Box<QuotientJson>,
    },
    LocalizedPowers {
        localized: Box<LocalizedJson>,
    },
    Tensor {
        tensor: Box<TensorJson>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct QuotientJson {
    pub base: CarrierJson,
    pub ideal: Vec<ElemJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LocalizedJson {
    pub base: CarrierJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub powers_of: Option<ElemJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub one_plus_ideal: Option<Vec<ElemJson>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TensorJson {
    pub left: CarrierJson,
    pub right: CarrierJson,
    pub base: CarrierJson,
}

impl CarrierJson {
    pub fn to_carrier(&self) -> Result<Carrier, CliError> {
        match self {
            CarrierJson::Name(name) => match name.as_str() {
                "Q" => Ok(Carrier::RationalField),
                "Z" => Ok(Carrier::Integers),
                "zero" => Ok(Carrier::ZeroRing),
                other => Err(CliError::usage(format!(
                    "unknown carrier name {other:?}; expected \"Q\", \"Z\" or \"zero\""
                ))),
            },
            CarrierJson::PLocal { p_local_ints } => Ok(Carrier::PLocalInts(*p_local_ints)),
            CarrierJson::PolyRing { poly_ring_over_q } => {
                let var = match poly_ring_over_q.as_str() {
                    "t" => PolyVar::T,
                    "X" => PolyVar::X,
                    "Y" => PolyVar::Y,
                    other => {
                        return Err(CliError::usage(format!(
                            "unknown polynomial variable {other:?}"
                        )))
                    }
                };
                Ok(Carrier::PolyRingOverQ(var))
            }
            CarrierJson::Quotient { quotient } => {
                let base = quotient.base.to_carrier()?;
                let ideal = quotient
                    .ideal
                    .iter()
                    .map(|e| e.to_elem())
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Carrier::Quotient(Box::new(base), ideal))
            }
            CarrierJson::LocalizedPowers { localized } => {
                let base = localized.base.to_carrier()?;
                match (&localized.powers_of, &localized.one_plus_ideal) {
                    (Some(g), None) => Ok(Carrier::Localized(
                        Box::new(base),
                        MultSet::PowersOf(Box::new(g.to_elem()?)),
                    )),
                    (None, Some(gens)) => {
                        let gens = gens
                            .iter()
                            .map(|e| e.to_elem())
                            .collect::<Result<Vec<_>, _>>()?;
                        Ok(Carrier::Localized(
                            Box::new(base),
                            MultSet::OnePlusIdeal(gens),
                        ))
                    }
                    _ => Err(CliError::usage(
                        "localized carrier needs exactly one of powers_of / one_plus_ideal"
                            .to_string(),
                    )),
                }
            }
            CarrierJson::Tensor { tensor } => Ok(Carrier::Tensor(
                Box::new(tensor.left.to_carrier()?),
                Box::new(tensor.right.to_carrier()?),
                Box::new(tensor.base.to_carrier()?),
            )),
        }
    }

    pub fn from_carrier(c: &Carrier) -> Self {
        match c {
            Carrier::RationalField => CarrierJson::Name("Q".to_string()),
            Carrier::Integers => CarrierJson::Name("Z".to_string()),
            Carrier::ZeroRing => CarrierJson::Name("zero".to_string()),
            Carrier::PLocalInts(p) => CarrierJson::PLocal { p_local_ints: *p },
            Carrier::PolyRingOverQ(v) => CarrierJson::PolyRing {
                poly_ring_over_q: v.name().to_string(),
            },
            Carrier::Quotient(base, ideal) => CarrierJson::Quotient {
                quotient: Box::new(QuotientJson {
                    base: CarrierJson::from_carrier(base),
                    ideal: ideal.iter().map(ElemJson::from_elem).collect(),
                }),
            },
            Carrier::Localized(base, MultSet::PowersOf(g)) => CarrierJson::LocalizedPowers {
                localized: Box::new(LocalizedJson {
                    base: CarrierJson::from_carrier(base),
                    powers_of: Some(ElemJson::from_elem(g)),
                    one_plus_ideal: None,
                }),
            },
            Carrier::Localized(base, MultSet::OnePlusIdeal(gens)) => CarrierJson::LocalizedPowers {
                localized: Box::new(LocalizedJson {
                    base: CarrierJson::from_carrier(base),
                    powers_of: None,
                    one_plus_ideal: Some(gens.iter().map(ElemJson::from_elem).collect()),
                }),
            },
            Carrier::Tensor(l, r, b) => CarrierJson::Tensor {
                tensor: Box::new(TensorJson {
                    left: CarrierJson::from_carrier(l),
                    right: CarrierJson::from_carrier(r),
                    base: CarrierJson::from_carrier(b),
                }),
            },
        }
    }
}

/// The ring-descriptor document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RingJson {
    pub carrier: CarrierJson,
    pub ring_of_def: Vec<ElemJson>,
    pub ideal_of_def: Vec<ElemJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime: Option<u64>,
    /// A⁺ generators; presence upgrades the ring to an affinoid pair.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plus_gens: Option<Vec<ElemJson>>,
}

impl RingJson {
    pub fn to_presentation(&self) -> Result<RingPresentation, CliError> {
        let carrier = self.carrier.to_carrier()?;
        let ring_of_def = self
            .ring_of_def
            .iter()
            .map(|e| e.to_elem())
            .collect::<Result<Vec<_>, _>>()?;
        let ideal_of_def = self
            .ideal_of_def
            .iter()
            .map(|e| e.to_elem())
            .collect::<Result<Vec<_>, _>>()?;
        RingPresentation::new(carrier, ring_of_def, ideal_of_def, self.prime)
            .map_err(CliError::from_core)
    }

    pub fn plus_gens(&self) -> Result<Vec<Elem>, CliError> {
        match &self.plus_gens {
            Some(gens) => gens.iter().map(|e| e.to_elem()).collect(),
            None => Ok(Vec::new()),
        }
    }

    pub fn from_presentation(p: &RingPresentation, plus: Option<&[Elem]>) -> Self {
        RingJson {
            carrier: CarrierJson::from_carrier(&p.carrier),
            ring_of_def: p.ring_of_def.iter().map(ElemJson::from_elem).collect(),
            ideal_of_def: p.ideal_of_def.iter().map(ElemJson::from_elem).collect(),
            prime: p.prime,
            plus_gens: plus.map(|g| g.iter().map(ElemJson::from_elem).collect()),
        }
    }
}

/// Load a descriptor file, reporting malformed JSON with line/column.
pub fn load_ring(path: &str) -> Result<RingJson, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::usage(format!(
            "malformed descriptor {path} at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

/// One entry of a valuation-grid file.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValuationJson {
    Gauss,
    Eval { c: String },
    TAdic { a: String },
    ResidueTrivial,
}

impl ValuationJson {
    pub fn to_valuation(&self, p: u64) -> Result<zadic_core::spa::DiscreteValuation, CoreError> {
        use zadic_core::spa::{DiscreteValuation, ValuationKind};
        let kind = match self {
            ValuationJson::Gauss => ValuationKind::Gauss,
            ValuationJson::Eval { c } => ValuationKind::EvalPAdic(parse_rat(c)?),
            ValuationJson::TAdic { a } => ValuationKind::TAdicAt(parse_rat(a)?),
            ValuationJson::ResidueTrivial => ValuationKind::ResidueTrivial,
        };
        DiscreteValuation::new(kind, p)
    }
}

pub fn load_valuations(path: &str) -> Result<Vec<ValuationJson>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| {
        CliError::usage(format!(
            "malformed valuation grid {path} at line {}, column {}: {e}",
            e.line(),
            e.column()
        ))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_round_trip_is_lossless() {
        let json = r#"{
            "carrier": {"poly_ring_over_q": "t"},
            "ring_of_def": ["t"],
            "ideal_of_def": ["3"],
            "prime": 3,
            "plus_gens": ["t"]
        }"#;
        let doc: RingJson = serde_json::from_str(json).unwrap();
        let pres = doc.to_presentation().unwrap();
        let back = RingJson::from_presentation(&pres, Some(&doc.plus_gens().unwrap()));
        assert_eq!(doc, back);
        let pres2 = back.to_presentation().unwrap();
        assert_eq!(pres, pres2);
    }

    #[test]
    fn nested_carriers_round_trip() {
        let json = r#"{
            "carrier": {"localized": {
                "base": {"localized": {"base": {"poly_ring_over_q": "t"},
                                        "powers_of": "t+1"}},
                "one_plus_ideal": ["3"]}},
            "ring_of_def": ["t", {"num": "1", "den": "t+1"}],
            "ideal_of_def": ["3"],
            "prime": 3
        }"#;
        let doc: RingJson = serde_json::from_str(json).unwrap();
        let pres = doc.to_presentation().unwrap();
        let back = RingJson::from_presentation(&pres, None);
        assert_eq!(back.to_presentation().unwrap(), pres);
    }
}
