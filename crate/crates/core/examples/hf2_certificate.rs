//! The mod 2 analogue of the BP obstruction.

fn main() -> mxi::Result<()> {
    let cert = mxi::steenrod::hf2_obstruction_certificate()?;
    print!("{cert}");
    println!("{}", serde_json::to_string_pretty(&cert).expect("serializable"));
    Ok(())
}
