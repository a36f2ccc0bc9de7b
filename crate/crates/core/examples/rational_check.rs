//! Over the rationals the polynomial counts match the partition numbers.

fn main() -> mxi::Result<()> {
    let r = mxi::gradebook::rational_mu_series_check(20)?;
    println!("polynomial: {}", r.polynomial);
    println!("partitions: {}", r.partitions);
    println!("match: {}", r.matches);
    Ok(())
}
