def make_list(size):
    l = []
    for i in range(size):
        l.append(i)
    return l


def sum_list(l):
    total = 0
    for x in l:
        total = total + x
    return total


def bench_main(n):
    total = 0
    for i in range(n):
        total = total + sum_list(make_list(30))
    return total
