//! Flat `key = value` parameter files.
//!
//! One assignment per line, `#` starts a comment, blank lines are ignored.
//! Keys are the [`SchemeParams`](crate::params::SchemeParams) field names;
//! values share the unit system of the `gamma` entry (absent keys keep the
//! defaults). Unknown and repeated keys are hard errors so that typos fail
//! loudly instead of silently running the defaults.

use std::path::Path;

use crate::params::{make_default_params, SchemeParams};
use crate::Error;

const KEYS: [&str; 7] = [
    "gamma",
    "gamma2",
    "omega13",
    "omega42",
    "eta",
    "kappa",
    "wavelength",
];

/// Parse config text into a parameter set (defaults for missing keys).
pub fn parse_config(text: &str) -> Result<SchemeParams, Error> {
    let mut params = make_default_params();
    let mut seen = [false; KEYS.len()];
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let Some((key, value)) = content.split_once('=') else {
            return Err(Error::Config {
                line,
                msg: format!("expected `key = value`, got {content:?}"),
            });
        };
        let key = key.trim();
        let value = value.trim();
        let Some(key_index) = KEYS.iter().position(|k| *k == key) else {
            return Err(Error::Config {
                line,
                msg: format!("unknown key {key:?}"),
            });
        };
        if seen[key_index] {
            return Err(Error::Config {
                line,
                msg: format!("key {key:?} given twice"),
            });
        }
        seen[key_index] = true;
        let parsed: f64 = value.parse().map_err(|_| Error::Config {
            line,
            msg: format!("cannot parse {value:?} as a number"),
        })?;
        match key {
            "gamma" => params.gamma = parsed,
            "gamma2" => params.gamma2 = parsed,
            "omega13" => params.omega13 = parsed,
            "omega42" => params.omega42 = parsed,
            "eta" => params.eta = parsed,
            "kappa" => params.kappa = parsed,
            "wavelength" => params.wavelength = parsed,
            _ => unreachable!(),
        }
    }
    params.validate()?;
    Ok(params)
}

/// Read and parse a config file.
pub fn load_config(path: &Path) -> Result<SchemeParams, Error> {
    let text = std::fs::read_to_string(path)?;
    parse_config(&text)
}
