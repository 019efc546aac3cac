def inner(n):
    total = 0
    while n > 0:
        n = n - 1
        total = total + n
    return total


def bench_main(n):
    s = 0
    for i in range(n):
        s = s + inner(20)
    return s
