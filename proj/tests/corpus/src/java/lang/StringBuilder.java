// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package java.lang;

public final class StringBuilder {
  private char[] buf;
  private int count;

  public StringBuilder() { buf = new char[16]; }

  public StringBuilder(String s) {
    buf = new char[s.length() + 16];
    append(s);
  }

  public StringBuilder(int capacity) { buf = new char[capacity < 1 ? 1 : capacity]; }

  private void ensure(int extra) {
    if (count + extra <= buf.length) return;
    int size = buf.length * 2 + 2;
    if (size < count + extra) size = count + extra;
    char[] bigger = new char[size];
    for (int i = 0; i < count; i++) bigger[i] = buf[i];
    buf = bigger;
  }

  public StringBuilder append(char c) {
    ensure(1);
    buf[count++] = c;
    return this;
  }

  public StringBuilder append(String s) {
    if (s == null) s = "null";
    int n = s.length();
    ensure(n);
    for (int i = 0; i < n; i++) buf[count++] = s.charAt(i);
    return this;
  }

  public StringBuilder append(int i) {
    if (i == Integer.MIN_VALUE) return append("-2147483648");
    if (i < 0) {
      append((char) 45);
      i = -i;
    }
    int start = count;
    do {
      append((char) (48 + i % 10));
      i /= 10;
    } while (i != 0);
    for (int a = start, b = count - 1; a < b; a++, b--) {
      char t = buf[a];
      buf[a] = buf[b];
      buf[b] = t;
    }
    return this;
  }

  public StringBuilder append(long v) { return append(String.valueOf(v)); }

  public StringBuilder append(float f) { return append(String.valueOf(f)); }

  public StringBuilder append(double d) { return append(String.valueOf(d)); }

  public StringBuilder append(boolean b) { return append(b ? "true" : "false"); }

  public StringBuilder append(Object o) { return append(o == null ? "null" : o.toString()); }

  public int length() { return count; }

  public char charAt(int i) {
    if (i < 0 || i >= count) throw new IndexOutOfBoundsException("index");
    return buf[i];
  }

  public void setLength(int n) {
    if (n < 0) throw new IndexOutOfBoundsException("length");
    ensure(n - count);
    for (int i = count; i < n; i++) buf[i] = 0;
    count = n;
  }

  public StringBuilder reverse() {
    for (int a = 0, b = count - 1; a < b; a++, b--) {
      char t = buf[a];
      buf[a] = buf[b];
      buf[b] = t;
    }
    return this;
  }

  public String toString() { return new String(buf, 0, count); }
}
