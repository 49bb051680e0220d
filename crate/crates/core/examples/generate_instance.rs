//! Generate a seeded random instance, write it as JSON and read it back.
//!
//! The same spec always yields the same bytes, on any platform.

use tsp_minplus::held_karp_pull;
use tsp_minplus::io::{gen_random, parse_json, write_json, GeneratorSpec};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec = GeneratorSpec::new(6, 42, 100, true);
    let doc = gen_random(&spec)?;
    let json = write_json(&doc);
    print!("{json}");

    let back = parse_json(&json)?;
    assert_eq!(back.instance, doc.instance);
    assert_eq!(write_json(&gen_random(&spec)?), json);
    println!(
        "{}: symmetric {}, optimum {}",
        back.name,
        back.instance.is_symmetric(),
        held_karp_pull(&back.instance, false).cost
    );
    Ok(())
}
