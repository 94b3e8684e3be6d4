//! Model specification grammar.
//!
//! Colon-separated family and parameters, `key=value` pairs, rules as
//! `name(key=value,...)`:
//!
//! ```text
//! powered:uniform:lambda=1:rule=powlog(c=1,a=0.75)
//! powered:exp:lambda=1:rule=gammalog(gamma=2)
//! powered:uniform:lambda=2:rule=const(s=0.5)
//! powered:uniform:lambda=1:rule=table(1000=0.3,10000=0.25)
//! logfrechet:rho=1:alpha=3
//! negpowexp:gamma=3
//! ```

use std::collections::BTreeMap;

use super::{BaseDistribution, ModelError, SnRule, WeightModel};

/// Parse a model spec string.
pub fn parse_model(spec: &str) -> Result<WeightModel, ModelError> {
    let parts: Vec<&str> = spec.trim().split(':').collect();
    match parts.first() {
        Some(&"powered") => parse_powered(&parts[1..]),
        Some(&"logfrechet") => {
            let kv = parse_kv_parts(&parts[1..])?;
            let rho = take(&kv, "rho", spec)?;
            let alpha = take(&kv, "alpha", spec)?;
            expect_only(&kv, &["rho", "alpha"])?;
            WeightModel::log_frechet(rho, alpha)
        }
        Some(&"negpowexp") => {
            let kv = parse_kv_parts(&parts[1..])?;
            let gamma = take(&kv, "gamma", spec)?;
            expect_only(&kv, &["gamma"])?;
            WeightModel::neg_power_exp(gamma)
        }
        Some(other) => Err(ModelError::Parse(format!(
            "unknown family `{other}` (expected powered, logfrechet, or negpowexp)"
        ))),
        None => Err(ModelError::Parse("empty model spec".into())),
    }
}

fn parse_powered(parts: &[&str]) -> Result<WeightModel, ModelError> {
    if parts.len() != 3 {
        return Err(ModelError::Parse(
            "powered model needs `powered:<base>:lambda=<v>:rule=<rule>`".into(),
        ));
    }
    let base_name = parts[0];
    let lambda = parse_single_kv(parts[1], "lambda")?;
    let base = match base_name {
        "uniform" => BaseDistribution::uniform(lambda)?,
        "exp" => BaseDistribution::exponential(lambda)?,
        other => {
            return Err(ModelError::Parse(format!(
                "unknown base `{other}` (expected uniform or exp)"
            )))
        }
    };
    let rule_spec = parts[2]
        .strip_prefix("rule=")
        .ok_or_else(|| ModelError::Parse(format!("expected `rule=...`, got `{}`", parts[2])))?;
    WeightModel::powered(base, parse_rule(rule_spec)?)
}

fn parse_rule(spec: &str) -> Result<SnRule, ModelError> {
    let (name, args) = split_call(spec)?;
    match name {
        "const" => {
            let kv = parse_kv_list(args)?;
            let s = take(&kv, "s", spec)?;
            expect_only(&kv, &["s"])?;
            SnRule::constant(s)
        }
        "powlog" => {
            let kv = parse_kv_list(args)?;
            let c = take(&kv, "c", spec)?;
            let a = take(&kv, "a", spec)?;
            expect_only(&kv, &["c", "a"])?;
            SnRule::power_of_log(c, a)
        }
        "gammalog" => {
            let kv = parse_kv_list(args)?;
            let gamma = take(&kv, "gamma", spec)?;
            expect_only(&kv, &["gamma"])?;
            SnRule::gamma_over_log(gamma)
        }
        "table" => {
            let mut entries = BTreeMap::new();
            for item in args.split(',') {
                let (k, v) = item.split_once('=').ok_or_else(|| {
                    ModelError::Parse(format!("table entry `{item}` is not n=s"))
                })?;
                let n: u64 = k
                    .trim()
                    .parse()
                    .map_err(|_| ModelError::Parse(format!("bad table size `{k}`")))?;
                let s: f64 = v
                    .trim()
                    .parse()
                    .map_err(|_| ModelError::Parse(format!("bad table value `{v}`")))?;
                entries.insert(n, s);
            }
            SnRule::table(entries)
        }
        other => Err(ModelError::Parse(format!(
            "unknown rule `{other}` (expected const, powlog, gammalog, or table)"
        ))),
    }
}

fn split_call(spec: &str) -> Result<(&str, &str), ModelError> {
    let open = spec
        .find('(')
        .ok_or_else(|| ModelError::Parse(format!("rule `{spec}` is missing `(`")))?;
    if !spec.ends_with(')') {
        return Err(ModelError::Parse(format!("rule `{spec}` is missing `)`")));
    }
    Ok((&spec[..open], &spec[open + 1..spec.len() - 1]))
}

fn parse_kv_parts(parts: &[&str]) -> Result<BTreeMap<String, f64>, ModelError> {
    parse_kv_iter(parts.iter().copied())
}

fn parse_kv_list(args: &str) -> Result<BTreeMap<String, f64>, ModelError> {
    parse_kv_iter(args.split(','))
}

fn parse_kv_iter<'a>(items: impl Iterator<Item = &'a str>) -> Result<BTreeMap<String, f64>, ModelError> {
    let mut out = BTreeMap::new();
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| ModelError::Parse(format!("`{item}` is not key=value")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| ModelError::Parse(format!("bad numeric value in `{item}`")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

fn parse_single_kv(part: &str, key: &str) -> Result<f64, ModelError> {
    let (k, v) = part
        .split_once('=')
        .ok_or_else(|| ModelError::Parse(format!("`{part}` is not key=value")))?;
    if k != key {
        return Err(ModelError::Parse(format!("expected `{key}=...`, got `{part}`")));
    }
    v.parse().map_err(|_| ModelError::Parse(format!("bad numeric value in `{part}`")))
}

fn take(kv: &BTreeMap<String, f64>, key: &str, spec: &str) -> Result<f64, ModelError> {
    kv.get(key).copied().ok_or_else(|| ModelError::Parse(format!("`{spec}` is missing `{key}=`")))
}

fn expect_only(kv: &BTreeMap<String, f64>, keys: &[&str]) -> Result<(), ModelError> {
    for k in kv.keys() {
        if !keys.contains(&k.as_str()) {
            return Err(ModelError::Parse(format!("unexpected key `{k}`")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Regime;

    #[test]
    fn parses_the_documented_examples() {
        let m = parse_model("powered:uniform:lambda=1:rule=powlog(c=1,a=0.75)").unwrap();
        assert_eq!(m.regime(), Regime::Intermediate);
        assert_eq!(m.lambda(), 1.0);

        let m = parse_model("logfrechet:rho=1:alpha=3").unwrap();
        assert_eq!(m.regime(), Regime::Intermediate);

        let m = parse_model("powered:exp:lambda=1:rule=gammalog(gamma=2)").unwrap();
        assert_eq!(m.regime(), Regime::VerySmall { gamma: 2.0 });

        let m = parse_model("negpowexp:gamma=3").unwrap();
        assert_eq!(m.regime(), Regime::VerySmall { gamma: 3.0 });

        let m = parse_model("powered:uniform:lambda=2:rule=table(10=0.5,100=0.4)").unwrap();
        assert_eq!(m.regime(), Regime::Other);
        assert_eq!(m.effective_sn(100), 0.4);
    }

    #[test]
    fn display_round_trips() {
        for spec in [
            "powered:uniform:lambda=1:rule=powlog(c=1,a=0.75)",
            "powered:exp:lambda=0.5:rule=const(s=1)",
            "powered:uniform:lambda=1:rule=gammalog(gamma=2)",
            "powered:uniform:lambda=2:rule=table(10=0.5,100=0.4)",
            "logfrechet:rho=1:alpha=3",
            "negpowexp:gamma=3",
        ] {
            let m = parse_model(spec).unwrap();
            let again = parse_model(&m.to_string()).unwrap();
            assert_eq!(m, again, "{spec} -> {m}");
        }
    }

    #[test]
    fn rejects_malformed_specs() {
        for bad in [
            "",
            "gaussian:mu=0",
            "powered:uniform:lambda=1",
            "powered:uniform:lambda=1:rule=powlog(c=1)",
            "powered:uniform:lambda=1:rule=powlog(c=1,a=2)",
            "powered:weird:lambda=1:rule=const(s=1)",
            "powered:uniform:lambda=0:rule=const(s=1)",
            "logfrechet:rho=1",
            "logfrechet:rho=1:alpha=-2",
            "negpowexp:gamma=x",
            "powered:uniform:lambda=1:rule=const(s=1,extra=2)",
        ] {
            assert!(parse_model(bad).is_err(), "`{bad}` should fail to parse");
        }
    }
}
