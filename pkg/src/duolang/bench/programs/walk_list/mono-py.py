def make_chain(size):
    head = "end"
    for i in range(size):
        head = (i, 2 * i + 1, head)
    return head


def walk(e):
    counter = 0
    while e != "end":
        counter = counter + (e[1] - e[0])
        e = e[2]
    return counter


def bench_main(n):
    total = 0
    for i in range(n):
        total = total + walk(make_chain(20))
    return total
