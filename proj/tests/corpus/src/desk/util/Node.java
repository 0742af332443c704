// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package desk.util;

public class Node {
  int value;
  Node next;

  Node(int value, Node next) {
    this.value = value;
    this.next = next;
  }
}
