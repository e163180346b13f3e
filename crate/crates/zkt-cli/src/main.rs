fn main() {
    println!("zkt: not wired up yet");
}
