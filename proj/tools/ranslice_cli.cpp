// CLI placeholder; wired up once the harness exists.
int main() { return 0; }
