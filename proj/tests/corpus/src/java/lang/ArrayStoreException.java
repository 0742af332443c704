// Copyright 2026 The jrom Authors.
// SPDX-License-Identifier: Apache-2.0

package java.lang;

public class ArrayStoreException extends RuntimeException {
  public ArrayStoreException() {}

  public ArrayStoreException(String message) { super(message); }
}
