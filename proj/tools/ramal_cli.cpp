// Placeholder main; subcommands are wired up once the library modules exist.
int main() { return 0; }
