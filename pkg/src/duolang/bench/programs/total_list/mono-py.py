def inner(l):
    total = 0
    for x in l:
        total = total + x
    return total


def bench_main(n):
    l = []
    for i in range(20):
        l.append(i)
    total = 0
    for i in range(n):
        total = total + inner(l)
    return total
