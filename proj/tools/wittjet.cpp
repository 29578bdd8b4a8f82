#include <cstdio>

int main() {
    std::puts("wittjet: placeholder");
    return 0;
}
