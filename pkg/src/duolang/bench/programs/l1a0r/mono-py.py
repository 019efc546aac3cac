def inner(n):
    while n > 0:
        n = n - 1


def bench_main(n):
    calls = 0
    for i in range(n):
        inner(20)
        calls = calls + 1
    return calls
