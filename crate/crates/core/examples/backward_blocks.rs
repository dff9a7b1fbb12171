//! The backward extension in blocks of `k`, with the block properties.

use kbonacci::sequence::KbonacciSequence;

fn main() -> kbonacci::Result<()> {
    let seq = KbonacciSequence::of_order(5)?;
    for n in 0..7 {
        let block = seq.backward_block(n);
        let props = seq.block_properties(n);
        let values: Vec<String> = block.values.iter().map(|v| format!("{v:>5}")).collect();
        println!(
            "n={n} from f[{}]: {}   zero-sum={} leader=f[k+n]={} all={}",
            block.first_index(),
            values.join(""),
            props.zero_sum,
            props.leader_matches_forward,
            props.all_hold()
        );
    }
    Ok(())
}
