//! Acceptance suite: one line per criterion.
//!
//! Criteria listed in `KNOWN_UNATTAINABLE` are expected to fail. The run
//! succeeds when every other criterion passes and every listed one still
//! fails; a listed criterion that starts passing fails the run so the list
//! gets updated.

use std::process::ExitCode;

use dressian::verify::{self, KNOWN_UNATTAINABLE};

fn main() -> ExitCode {
    // libtest flags such as --nocapture are passed through; list mode has
    // nothing to enumerate
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let mut good = true;
    for c in verify::criteria() {
        let r = verify::run(&c);
        println!("{}", r.line());
        let known = KNOWN_UNATTAINABLE.iter().find(|(id, _)| *id == r.id);
        match (r.ok(), known) {
            (true, None) | (false, Some(_)) => {}
            (false, None) => good = false,
            (true, Some(_)) => {
                println!("  criterion {} is listed as unattainable but passed", r.id);
                good = false;
            }
        }
        if let (false, Some((_, why))) = (r.ok(), known) {
            println!("  known unattainable: {why}");
        }
    }
    if good {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
