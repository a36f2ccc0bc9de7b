//! Poincaré series of free, polynomial and exterior algebras and their quotients.

use mxi::gradebook::{series_divide, series_free_assoc, series_graded_algebra};

fn main() -> mxi::Result<()> {
    let nsym = series_free_assoc(&[2, 4, 6, 8, 10, 12], 12)?;
    println!("NSym:            {nsym}");
    let poly = series_graded_algebra(&[2, 4, 6, 8, 10, 12], &[], 12)?;
    println!("polynomial part: {poly}");
    let steenrod = series_graded_algebra(&[1, 3, 7], &[], 12)?;
    println!("dual A(2):       {steenrod}");
    println!("NSym / poly:     {}", series_divide(&nsym, &poly, 12)?);
    Ok(())
}
