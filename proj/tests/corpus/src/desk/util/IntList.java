// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk.util;

public class IntList {
  private Node head;
  private int size;

  public void push(int v) {
    head = new Node(v, head);
    size++;
  }

  public int pop() {
    if (head == null) throw new IllegalStateException("empty");
    int v = head.value;
    head = head.next;
    size--;
    return v;
  }

  public int size() { return size; }

  public int sum() {
    int s = 0;
    for (Node n = head; n != null; n = n.next) s += n.value;
    return s;
  }

  public static int roundTrip(int n) {
    IntList l = new IntList();
    for (int i = 0; i < (n & 31); i++) l.push(i * 3);
    int s = l.sum();
    while (l.size() > 2) s -= l.pop();
    return s;
  }
}
