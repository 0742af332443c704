// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk.util;

public class IntStack {
  private int[] items;
  private int top;

  public IntStack(int capacity) { items = new int[capacity < 1 ? 1 : capacity]; }

  public void push(int v) {
    if (top == items.length) {
      int[] bigger = new int[items.length * 2];
      for (int i = 0; i < top; i++) bigger[i] = items[i];
      items = bigger;
    }
    items[top++] = v;
  }

  public int pop() { return items[--top]; }

  public boolean isEmpty() { return top == 0; }

  public static int rpn(int a, int b) {
    IntStack s = new IntStack(2);
    s.push(a);
    s.push(b);
    s.push(s.pop() + s.pop());
    s.push(7);
    s.push(s.pop() * s.pop());
    return s.pop();
  }
}
