//! Build, serialize and reload a packed Legendre table.

use zckit::{LegendreTable, PrimeModulus};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let m = PrimeModulus::new(839)?;
    let table = LegendreTable::build(m);
    let bytes = table.to_bytes();
    println!(
        "N={m}: {} payload bits, {} residues, {} bytes on disk",
        table.payload_bits(),
        table.residue_count(),
        bytes.len()
    );

    let path = std::env::temp_dir().join(format!("legendre_{m}.zclt"));
    std::fs::write(&path, &bytes)?;
    let back = LegendreTable::from_bytes(&std::fs::read(&path)?)?;
    assert_eq!(back, table);
    println!("reloaded {} ok", path.display());

    let symbols: Vec<i8> = (0..12).map(|n| table.lookup(n)).collect();
    println!("l(0..12) = {symbols:?}");
    Ok(())
}
