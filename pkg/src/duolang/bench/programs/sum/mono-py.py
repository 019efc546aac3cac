def inner(a, b, c, d, e):
    return a + b + c + d + e


def bench_main(n):
    total = 0
    for i in range(n):
        total = total + inner(i, 1, 2, 3, 4)
    return total
