#include <cstdio>
int main() { std::puts("lotforge: CLI under construction"); return 0; }
