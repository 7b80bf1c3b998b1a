//! Declarative names for every constructed sequence.
//!
//! The textual form is `family[:params]`, for example `tm`, `theta`,
//! `alpha:4,5,6`, `flip:0110` or `kappa:2,3,4`.

use std::fmt;
use std::str::FromStr;

use crate::derived::{
    beta_prefix, method_a_prefix, theta_prefix, v_prefix, vartheta_prefix, w_prefix, DigitTriple, TernarySource,
};
use crate::error::{usage, Error, Result};
use crate::method_b::{kappa_prefix, MethodBConfig};
use crate::thue_morse::{seeded_flip_prefix, tm_prefix, FlipSeed};
use crate::words::Word;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceSpec {
    ThueMorse,
    Theta,
    Vartheta,
    V,
    W,
    Beta,
    MethodA { triple: DigitTriple, source: TernarySource },
    SeededFlip(FlipSeed),
    Kappa(MethodBConfig),
}

impl SequenceSpec {
    pub fn family(&self) -> &'static str {
        match self {
            SequenceSpec::ThueMorse => "M",
            SequenceSpec::Theta => "THETA",
            SequenceSpec::Vartheta => "VARTHETA",
            SequenceSpec::V => "V",
            SequenceSpec::W => "W",
            SequenceSpec::Beta => "BETA",
            SequenceSpec::MethodA { .. } => "METHOD_A",
            SequenceSpec::SeededFlip(_) => "SEEDED_FLIP",
            SequenceSpec::Kappa(_) => "KAPPA",
        }
    }

    pub fn prefix(&self, n: usize) -> Word {
        match self {
            SequenceSpec::ThueMorse => tm_prefix(n),
            SequenceSpec::Theta => theta_prefix(n),
            SequenceSpec::Vartheta => vartheta_prefix(n),
            SequenceSpec::V => v_prefix(n),
            SequenceSpec::W => w_prefix(n),
            SequenceSpec::Beta => beta_prefix(n),
            SequenceSpec::MethodA { triple, source } => method_a_prefix(*triple, *source, n),
            SequenceSpec::SeededFlip(seed) => seeded_flip_prefix(seed, n),
            SequenceSpec::Kappa(config) => kappa_prefix(config, n),
        }
    }
}

pub fn parse_triple(text: &str) -> Result<[u8; 3]> {
    let values = text
        .split(',')
        .map(|v| v.trim().parse::<u8>().map_err(|_| Error::Usage(format!("bad integer {v:?} in {text:?}"))))
        .collect::<Result<Vec<_>>>()?;
    values.try_into().map_err(|_| Error::Usage(format!("expected three comma-separated integers, got {text:?}")))
}

impl FromStr for SequenceSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let name = name.to_ascii_lowercase();
        let no_params = |spec: SequenceSpec| match params {
            None => Ok(spec),
            Some(_) => usage(format!("family {name} takes no parameters")),
        };
        match name.as_str() {
            "tm" | "m" | "thue-morse" => no_params(SequenceSpec::ThueMorse),
            "theta" => no_params(SequenceSpec::Theta),
            "vartheta" => no_params(SequenceSpec::Vartheta),
            "v" => no_params(SequenceSpec::V),
            "w" => no_params(SequenceSpec::W),
            "beta" => no_params(SequenceSpec::Beta),
            "alpha" | "method-a" => {
                let triple = DigitTriple::new(params.map(parse_triple).transpose()?.unwrap_or([1, 2, 3]))?;
                Ok(SequenceSpec::MethodA { triple, source: TernarySource::Theta })
            }
            "flip" | "seeded-flip" => {
                let seed = params.ok_or_else(|| Error::Usage("flip needs a seed, e.g. flip:0110".into()))?;
                Ok(SequenceSpec::SeededFlip(FlipSeed::new(Word::from_ascii(seed, 2)?)?))
            }
            "kappa" | "method-b" => {
                let config = match params {
                    None => MethodBConfig::default(),
                    Some(p) => {
                        let d = MethodBConfig::default();
                        MethodBConfig::new(parse_triple(p)?, TernarySource::Theta, d.block_order(), d.start_section())?
                    }
                };
                Ok(SequenceSpec::Kappa(config))
            }
            other => usage(format!("unknown sequence family {other:?}")),
        }
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSpec::ThueMorse => f.write_str("tm"),
            SequenceSpec::Theta => f.write_str("theta"),
            SequenceSpec::Vartheta => f.write_str("vartheta"),
            SequenceSpec::V => f.write_str("v"),
            SequenceSpec::W => f.write_str("w"),
            SequenceSpec::Beta => f.write_str("beta"),
            SequenceSpec::MethodA { triple, source } => {
                let [a, b, c] = triple.digits();
                write!(f, "alpha:{a},{b},{c}")?;
                if *source == TernarySource::Vartheta {
                    f.write_str("@vartheta")?;
                }
                Ok(())
            }
            SequenceSpec::SeededFlip(seed) => write!(f, "flip:{}", seed.word()),
            SequenceSpec::Kappa(config) => {
                let [a, b, c] = config.gap_values();
                write!(f, "kappa:{a},{b},{c}")
            }
        }
    }
}
