// doctest runner entry point; test cases live in the per-module files.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>
