// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk.text;

public class Tokenizer {
  private final String input;
  private int pos;

  public Tokenizer(String input) {
    if (input == null) throw new IllegalArgumentException("input");
    this.input = input;
  }

  public boolean hasMore() {
    skipSpace();
    return pos < input.length();
  }

  private void skipSpace() {
    while (pos < input.length() && Character.isWhitespace(input.charAt(pos))) pos++;
  }

  public String next() {
    skipSpace();
    if (pos >= input.length()) throw new IllegalStateException("no more tokens");
    int start = pos;
    char c = input.charAt(pos);
    if (Character.isDigit(c)) {
      while (pos < input.length() && Character.isDigit(input.charAt(pos))) pos++;
    } else if (Character.isLetter(c)) {
      while (pos < input.length() && Character.isLetter(input.charAt(pos))) pos++;
    } else {
      pos++;
    }
    return input.substring(start, pos);
  }

  public static int count(int k) {
    String text = (k & 1) == 0 ? "let x = 42 + y7" : "  alpha beta  ( 12 ) ";
    Tokenizer t = new Tokenizer(text);
    int n = 0;
    while (t.hasMore()) {
      t.next();
      n++;
    }
    return n;
  }

  public static int sumNumbers(int k) {
    Tokenizer t = new Tokenizer((k & 1) == 0 ? "1 + 22 + 333" : "7 8 nine 10");
    int sum = 0;
    while (t.hasMore()) {
      String tok = t.next();
      if (Character.isDigit(tok.charAt(0))) sum += Integer.parseInt(tok);
    }
    return sum;
  }
}
