package com.mini.app;

import android.app.Activity;
import android.os.Bundle;
import android.view.View;

public class A extends Activity {

    @Override
    public void onCreate(Bundle savedInstanceState) {
        super.onCreate(savedInstanceState);
        View banner = findViewById(R.id.button1);
        banner.setEnabled(true);
    }
}
