def inner(a, b, c):
    return a + b * c


def bench_main(n):
    total = 0
    for i in range(n):
        total = total + inner(i, 2, 3)
    return total
