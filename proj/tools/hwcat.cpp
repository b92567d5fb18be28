// CLI stub; filled in once the engine layers exist.
int main() { return 64; }
