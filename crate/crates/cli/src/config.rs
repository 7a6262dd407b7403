use clap::Args;
use jacobi_core::SampleConfig;

use crate::render::Format;

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be a positive number".into()),
        Err(e) => Err(e.to_string()),
    }
}

#[derive(Args, Clone, Debug, PartialEq)]
pub struct RunConfig {
    /// Sample points per numeric check.
    #[arg(long, global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub samples: u64,
    /// Half-width of the sampling box.
    #[arg(long = "box", global = true, default_value_t = 2.0, value_parser = positive)]
    pub half_width: f64,
    /// Relative tolerance for numeric zero checks.
    #[arg(long, global = true, default_value_t = 1e-9, value_parser = positive)]
    pub tol: f64,
    /// Seed for sample points.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { samples: 64, half_width: 2.0, tol: 1e-9, seed: 0, format: Format::Text }
    }
}

impl RunConfig {
    pub fn sample_config(&self) -> SampleConfig {
        SampleConfig { samples: self.samples as usize, half_width: self.half_width, tol: self.tol, seed: self.seed }
    }
}
