fn main() {
    println!("dulac");
}
