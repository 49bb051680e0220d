//! Cross-check brute force, the pull DP and the push solver on a sweep of
//! seeded instances, the same way `tsp-minplus verify` does.

use tsp_minplus::cli::{run_verification, VerifyConfig};
use tsp_minplus::{kernel_lookup, KernelId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let config = VerifyConfig {
        n_min: 2,
        n_max: 8,
        instances: 10,
        seed: 1,
    };
    let kernels = KernelId::builtins()
        .iter()
        .map(|id| Ok((id.to_string(), kernel_lookup(id)?)))
        .collect::<Result<Vec<_>, tsp_minplus::kernels::KernelError>>()?;
    let report = run_verification(&config, &kernels)?;
    match report.mismatch {
        None => println!(
            "{} instances, {} checks, all equal",
            report.instances, report.checks
        ),
        Some((msg, doc)) => println!("mismatch on {}: {msg}", doc.name),
    }
    Ok(())
}
