package com.omni.fixture;

import android.app.Activity;

public class SecondActivity extends Activity {
}
