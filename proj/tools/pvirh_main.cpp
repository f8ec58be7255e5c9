// placeholder during bring-up; replaced by the full CLI
int main() { return 1; }
