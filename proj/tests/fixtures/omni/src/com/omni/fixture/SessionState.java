package com.omni.fixture;

import java.io.Serializable;

public class SessionState implements Serializable {

    private static final long serialVersionUID = 1L;

    public int launchCount;
}
