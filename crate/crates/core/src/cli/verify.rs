use std::io::Write;

use crate::io::{gen_random, write_json, GeneratorSpec, InstanceDocument};
use crate::kernels::MinPlusKernel;
use crate::solvers::{
    brute_force, expected_kernel_calls, held_karp_pull, layer_source_rows, solve_minplus_with,
    Instance, SolveOptions, BRUTE_FORCE_MAX_N,
};

use super::CliError;

/// Largest size accepted by `verify`; brute force dominates beyond it.
pub const VERIFY_MAX_N: usize = 9;
const _: () = assert!(VERIFY_MAX_N <= BRUTE_FORCE_MAX_N);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub n_min: usize,
    pub n_max: usize,
    pub instances: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub instances: usize,
    pub checks: usize,
    /// First failure: a description and the offending instance.
    pub mismatch: Option<(String, InstanceDocument)>,
}

impl VerifyConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        if self.n_min < 1 || self.n_min > self.n_max {
            return Err(CliError::Usage(format!(
                "need 1 <= n-min <= n-max, got {}..{}",
                self.n_min, self.n_max
            )));
        }
        if self.n_max > VERIFY_MAX_N {
            return Err(CliError::Usage(format!(
                "n-max {} exceeds the verification limit {VERIFY_MAX_N}",
                self.n_max
            )));
        }
        Ok(())
    }

    /// Instance `i` of size `n`: seeds count up from the base seed, and odd
    /// indices are symmetric.
    pub fn spec(&self, n: usize, i: usize) -> GeneratorSpec {
        let offset = ((n - self.n_min) * self.instances + i) as u64;
        GeneratorSpec::new(n, self.seed.wrapping_add(offset), 1000, i % 2 == 1)
    }
}

/// Checks brute force, pull DP and the push solver under every kernel and
/// every {restricted, unrestricted} x {padded, unpadded} mode, plus the
/// kernel-call accounting. Stops at the first mismatch.
pub fn run_verification(
    config: &VerifyConfig,
    kernels: &[(String, Box<dyn MinPlusKernel>)],
) -> Result<VerifyReport, CliError> {
    config.validate()?;
    let mut report = VerifyReport::default();
    for n in config.n_min..=config.n_max {
        for i in 0..config.instances {
            let doc = gen_random(&config.spec(n, i))?;
            report.instances += 1;
            if let Err(msg) = check_instance(&doc.instance, kernels, &mut report.checks) {
                report.mismatch = Some((msg, doc));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

fn check_instance(
    inst: &Instance,
    kernels: &[(String, Box<dyn MinPlusKernel>)],
    checks: &mut usize,
) -> Result<(), String> {
    let n = inst.n();
    let reference = brute_force(inst).map_err(|e| e.to_string())?.cost;
    let pull = held_karp_pull(inst, false).cost;
    *checks += 1;
    if pull != reference {
        return Err(format!("held-karp cost {pull} != brute force {reference}"));
    }
    for (name, kernel) in kernels {
        for restrict_to_v1 in [true, false] {
            for pad_last_batch in [false, true] {
                let opts = SolveOptions {
                    restrict_to_v1,
                    pad_last_batch,
                    ..SolveOptions::default()
                };
                let mode =
                    format!("kernel {name}, restricted {restrict_to_v1}, padded {pad_last_batch}");
                let out = solve_minplus_with(inst, kernel.as_ref(), &opts)
                    .map_err(|e| format!("{mode}: {e}"))?;
                *checks += 1;
                if out.cost != reference {
                    return Err(format!(
                        "{mode}: cost {} != brute force {reference}",
                        out.cost
                    ));
                }
                let expected = expected_kernel_calls(n, restrict_to_v1);
                *checks += 1;
                if out.stats.total_kernel_calls != expected {
                    return Err(format!(
                        "{mode}: {} kernel calls, expected {expected}",
                        out.stats.total_kernel_calls
                    ));
                }
                for layer in &out.stats.layers {
                    let want = layer_source_rows(n, layer.level, restrict_to_v1).div_ceil(n as u64);
                    *checks += 1;
                    if layer.kernel_calls != want {
                        return Err(format!(
                            "{mode}: layer {} made {} kernel calls, expected {want}",
                            layer.level, layer.kernel_calls
                        ));
                    }
                }
            }
        }
    }
    Ok(())
}

pub fn verify_command(
    config: &VerifyConfig,
    kernels: &[(String, Box<dyn MinPlusKernel>)],
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let report = run_verification(config, kernels)?;
    match report.mismatch {
        None => {
            writeln!(
                out,
                "verified {} instances, {} checks, 0 mismatches",
                report.instances, report.checks
            )?;
            Ok(())
        }
        Some((msg, doc)) => {
            writeln!(err, "mismatch on {}: {msg}", doc.name)?;
            out.write_all(write_json(&doc).as_bytes())?;
            Err(CliError::Mismatch(format!(
                "verification failed after {} instances",
                report.instances
            )))
        }
    }
}
