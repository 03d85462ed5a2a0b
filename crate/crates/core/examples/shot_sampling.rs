//! Draws shots from the K_4 and K_8 complement distributions at the shot
//! counts used on hardware runs.

use ucdtqw::complement::{closed_form_distribution, ComplementSpec};
use ucdtqw::probability::l1_distance;
use ucdtqw::sampling::{empirical, sample};

fn main() -> ucdtqw::Result<()> {
    for n in [2, 3] {
        let p = closed_form_distribution(&ComplementSpec::canonical(n, 1)?).distribution;
        for shots in [8192, 1_000_000] {
            let counts = sample(&p, shots, 7)?;
            let l1 = l1_distance(&empirical(&counts), &p)?;
            println!("n={n} shots={shots:>7}: counts {:?}, l1 {l1:.5}", counts.counts());
        }
    }
    Ok(())
}
