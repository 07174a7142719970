//! Writes a small KAT file, reads it back, verifies it, then shows that a
//! single flipped digit is caught.

use sosemanuk::kat::{kat_to_string, parse_kat, verify_kat, KatEntry};

fn main() -> Result<(), sosemanuk::Error> {
    let entries = vec![
        KatEntry::generate(&[0u8; 16], &[0u8; 16])?,
        KatEntry::generate(&[0xA5; 32], &[1u8; 16])?,
        KatEntry::generate(&(0u8..20).collect::<Vec<_>>(), &[0xFF; 16])?,
    ];
    let text = kat_to_string(&entries);
    print!("{text}");

    let report = verify_kat(&parse_kat(&text)?);
    println!("\n{report}");

    let at = text.find("STREAM=").unwrap() + 7 + 100;
    let mut bad = text.clone();
    let digit = if &bad[at..at + 1] == "f" { "0" } else { "f" };
    bad.replace_range(at..at + 1, digit);
    println!("\nafter corrupting one digit:\n{}", verify_kat(&parse_kat(&bad)?));
    Ok(())
}
