package com.omni.fixture;

public final class R {

    public static final class id {
        public static final int button1 = 0x7f080001;
        public static final int label2 = 0x7f080002;
    }

    public static final class layout {
        public static final int main = 0x7f030000;
    }
}
