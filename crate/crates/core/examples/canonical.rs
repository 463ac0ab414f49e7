//! Moving relabellings to the front of a sequence and measuring its size.

use rearrange::{canonicalize_sequence, parse_tree, sequence_size, OperationSequence};

fn main() -> rearrange::Result<()> {
    let t1 = parse_tree("((d,e,f)b,(g,h)c)a;")?;
    let seq = OperationSequence::parse_script("move f b c\nperm b>d d>b\nmove e d b\n")?;
    let canon = canonicalize_sequence(&seq);

    println!("original ({} operations, size {}):", seq.len(), sequence_size(&seq));
    print!("{}", seq.to_script());
    println!("canonical (size {}):", canon.size());
    print!("{}", canon.to_sequence().to_script());

    let a = seq.replay(&t1)?;
    let b = canon.to_sequence().replay(&t1)?;
    println!("same result: {} -> {}", a.is_congruent(&b), a.to_newick());
    Ok(())
}
