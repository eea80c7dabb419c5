//! `--synth FAMILY,r=..,gamma=..,mu=..,n=..` specifications.

use std::fmt;
use std::str::FromStr;

use gnbfit_core::distributions::{sample_gamma, sample_gg, sample_gnb, GGParams};
use gnbfit_core::fitting::Sample;
use gnbfit_core::objectives::ModelFamily;

#[derive(Debug, Clone, PartialEq)]
pub struct SynthSpec {
    pub family: ModelFamily,
    pub r: f64,
    /// Always 1 for nb and gamma.
    pub gamma: f64,
    pub mu: f64,
    pub n: usize,
}

#[derive(Debug, thiserror::Error, PartialEq)]
#[error("invalid --synth `{spec}`: {reason}")]
pub struct SynthError {
    pub spec: String,
    pub reason: String,
}

impl FromStr for SynthSpec {
    type Err = SynthError;

    fn from_str(s: &str) -> Result<Self, SynthError> {
        let err = |reason: String| SynthError {
            spec: s.to_string(),
            reason,
        };
        let mut parts = s.split(',').map(str::trim);
        let family_name = parts.next().unwrap_or_default();
        let family = ModelFamily::parse(family_name)
            .ok_or_else(|| err(format!("unknown family `{family_name}` (nb, gnb, gamma, gg)")))?;
        let (mut r, mut gamma, mut mu, mut n) = (None, None, None, None);
        for part in parts {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got `{part}`")))?;
            let slot = match key.trim() {
                "r" => &mut r,
                "gamma" => &mut gamma,
                "mu" => &mut mu,
                "n" => {
                    let v: usize = value
                        .trim()
                        .parse()
                        .map_err(|_| err(format!("n = `{value}` is not a count")))?;
                    n = Some(v);
                    continue;
                }
                other => return Err(err(format!("unknown key `{other}`"))),
            };
            let v: f64 = value
                .trim()
                .parse()
                .map_err(|_| err(format!("{key} = `{value}` is not a number")))?;
            *slot = Some(v);
        }
        let r = r.ok_or_else(|| err("missing r".into()))?;
        let mu = mu.ok_or_else(|| err("missing mu".into()))?;
        let n = n.ok_or_else(|| err("missing n".into()))?;
        if n == 0 {
            return Err(err("n must be at least 1".into()));
        }
        let gamma = match (family.is_generalized(), gamma) {
            (true, Some(g)) => g,
            (true, None) => return Err(err("missing gamma".into())),
            (false, None) | (false, Some(1.0)) => 1.0,
            (false, Some(g)) => return Err(err(format!("{family} has gamma = 1, got {g}"))),
        };
        GGParams::new(r, gamma, mu).map_err(|e| err(e.to_string()))?;
        Ok(SynthSpec {
            family,
            r,
            gamma,
            mu,
            n,
        })
    }
}

impl fmt::Display for SynthSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},r={},gamma={},mu={},n={}",
            self.family, self.r, self.gamma, self.mu, self.n
        )
    }
}

impl SynthSpec {
    /// Draws the sample; NB draws are gamma-mixed Poisson counts.
    pub fn draw(&self, seed: u64) -> Sample {
        let p = GGParams::new(self.r, self.gamma, self.mu).expect("validated at parse time");
        match self.family {
            ModelFamily::NB | ModelFamily::GNB => Sample::Discrete(sample_gnb(&p, self.n, seed)),
            ModelFamily::Gamma => Sample::Continuous(sample_gamma(&p.base_gamma(), self.n, seed)),
            ModelFamily::GG => Sample::Continuous(sample_gg(&p, self.n, seed)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses() {
        let s: SynthSpec = "gnb,r=2,gamma=1.5,mu=1,n=50000".parse().unwrap();
        assert_eq!(
            s,
            SynthSpec {
                family: ModelFamily::GNB,
                r: 2.0,
                gamma: 1.5,
                mu: 1.0,
                n: 50000
            }
        );
        let s: SynthSpec = "gamma,r=2,mu=3,n=10".parse().unwrap();
        assert_eq!(s.gamma, 1.0);
        assert_eq!(s.to_string(), "gamma,r=2,gamma=1,mu=3,n=10");
    }

    #[test]
    fn rejects() {
        for bad in [
            "weibull,r=1,mu=1,n=3",
            "gg,r=1,mu=1,n=3",
            "gg,r=1,gamma=0,mu=1,n=3",
            "nb,r=1,gamma=2,mu=1,n=3",
            "gamma,r=1,mu=1",
            "gamma,r=1,mu=1,n=0",
            "gamma,r=-1,mu=1,n=3",
            "gamma,r=1,mu=x,n=3",
            "gamma,r=1,mu=1,n=3,extra=1",
            "gamma,r",
        ] {
            assert!(bad.parse::<SynthSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn draws_are_seeded() {
        let s: SynthSpec = "gg,r=2,gamma=1.5,mu=1,n=100".parse().unwrap();
        assert_eq!(s.draw(3), s.draw(3));
        assert_ne!(s.draw(3), s.draw(4));
        assert!(matches!("nb,r=2,mu=1,n=5".parse::<SynthSpec>().unwrap().draw(1), Sample::Discrete(_)));
    }
}
