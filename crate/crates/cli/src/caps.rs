//! Default caps, overridable through `EQLOC_CAPS` (for example `n_cap=3,stages=5`).

pub const CAPS_VAR: &str = "EQLOC_CAPS";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub n_cap: usize,
    pub stages: usize,
    pub level_cap: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { n_cap: 2, stages: 4, level_cap: 1 }
    }
}

impl Caps {
    pub fn parse(spec: &str) -> Result<Caps, String> {
        let mut caps = Caps::default();
        for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part.split_once('=').ok_or_else(|| format!("{CAPS_VAR}: expected key=value, got {part:?}"))?;
            let v: usize = v.trim().parse().map_err(|_| format!("{CAPS_VAR}: {k} needs a number"))?;
            match k.trim() {
                "n_cap" => caps.n_cap = v,
                "stages" => caps.stages = v,
                "level_cap" => caps.level_cap = v,
                other => return Err(format!("{CAPS_VAR}: unknown key {other:?}")),
            }
        }
        Ok(caps)
    }

    pub fn from_env() -> Result<Caps, String> {
        match std::env::var(CAPS_VAR) {
            Ok(s) => Caps::parse(&s),
            Err(_) => Ok(Caps::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_overrides() {
        assert_eq!(Caps::parse("n_cap=3, stages=7").unwrap(), Caps { n_cap: 3, stages: 7, level_cap: 1 });
        assert_eq!(Caps::parse("").unwrap(), Caps::default());
        assert!(Caps::parse("depth=1").is_err());
        assert!(Caps::parse("n_cap").is_err());
    }
}
